"""QBF -> graph game -> Phutball reduction pipeline."""

__version__ = "0.1.0"
