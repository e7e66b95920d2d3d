"""Graph ConvNet heat-maps, beam search decoding and exact oracles for 2D Euclidean TSP."""

__version__ = "0.1.0"
