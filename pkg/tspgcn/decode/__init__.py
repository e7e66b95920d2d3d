from tspgcn.decode.batch import DECODERS, decode_batch
from tspgcn.decode.scoring import PROB_FLOOR, log_probs, symmetrize, tour_probability
from tspgcn.decode.search import BeamState, beam_decode, beam_decode_shortest, beam_search, greedy_decode

__all__ = [
    "DECODERS",
    "PROB_FLOOR",
    "BeamState",
    "beam_decode",
    "beam_decode_shortest",
    "beam_search",
    "decode_batch",
    "greedy_decode",
    "log_probs",
    "symmetrize",
    "tour_probability",
]
