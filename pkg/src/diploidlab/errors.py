"""Exception types shared across the package."""


class DiploidLabError(Exception):
    """Base class for all package-specific errors."""


class EmptyLocusSet(DiploidLabError):
    """Operation requires at least one heterozygous locus."""


class ReadTooLong(DiploidLabError):
    """Requested read length exceeds the haplotype length."""


class InvalidK(DiploidLabError):
    """k must satisfy 1 < k < L."""


class NotEulerian(DiploidLabError):
    """Condensed graph has in/out degree imbalances."""

    def __init__(self, imbalanced):
        self.imbalanced = list(imbalanced)
        super().__init__(f"graph is not Eulerian; imbalanced vertices: {self.imbalanced}")


class Disconnected(DiploidLabError):
    """Graph is not connected where a single component was required."""


class OddLength(DiploidLabError):
    """Spelled string cannot be split into two equal halves."""


class Fragmented(DiploidLabError):
    """Greedy merging ended with more than two strings."""


class NotStronglyConnected(DiploidLabError):
    """Overlap graph is not strongly connected."""


class BudgetExceeded(DiploidLabError):
    """Exact search budget exceeded."""


class UncoveredLocus(DiploidLabError):
    """A heterozygous locus is not covered on some haplotype."""

    def __init__(self, locus, haplotype):
        self.locus = locus
        self.haplotype = haplotype
        super().__init__(f"locus {locus} not covered on haplotype {haplotype}")


class SchemaMismatch(DiploidLabError):
    """Input file does not match the expected schema."""
