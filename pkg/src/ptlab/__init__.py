"""Property testers for Boolean functions over F_2^n, tester combinators and
exact brute-force oracles for checking them at small n."""

__version__ = "0.1.0"
