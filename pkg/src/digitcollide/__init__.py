"""Digit sums in bases 2 and 3, executable end to end: collision scans,
pair witnesses, joint distribution against the product-Gaussian
prediction, digit correlations with tail bounds, multiplier constructions
that write prescribed bit blocks, and the factorial/Catalan valuation
arithmetic that ties them together."""

__version__ = "0.1.0"
