"""Prime-factor statistics of N_p(f) = p^(k-1) + 1 - a_p(f) for integral newforms."""

__version__ = "0.1.0"
