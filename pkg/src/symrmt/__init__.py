"""Random matrix ensembles of compact symmetric spaces: sampling, Jacobi
ensemble kernels and their sine/Bessel scaling limits."""

__version__ = "0.1.0"
