"""Independent reference implementations used to cross-check the package.

Each module here recomputes a quantity through a different route than the
library (characteristic polynomials instead of LAPACK, Fock-space state
vectors instead of permanents, truncated number sums instead of
generating functions, Taylor series instead of eigendecomposition). They
are deliberately slow and only meant for small problem sizes.
"""
