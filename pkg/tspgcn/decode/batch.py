import logging
from functools import partial

from tqdm.contrib.concurrent import thread_map

from tspgcn.decode.scoring import symmetrize as symmetrize_heatmap
from tspgcn.decode.search import beam_decode, beam_decode_shortest, greedy_decode
from tspgcn.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

DECODERS = ("greedy", "beam", "beam-shortest")


def decode_one(index, heatmaps, decoder, beam_width, instances, start, symmetrize):
    heatmap = heatmaps[index]
    if symmetrize:
        heatmap = symmetrize_heatmap(heatmap)
    if decoder == "greedy":
        return greedy_decode(heatmap, start)
    if decoder == "beam":
        return beam_decode(heatmap, beam_width, start)
    return beam_decode_shortest(heatmap, instances[index], beam_width, start)


def decode_batch(heatmaps, decoder="greedy", beam_width=1, instances=None, start=0,
                 symmetrize=False, threads=1, quiet=True):
    """
    Decode a stack of heat-maps. Instances are spread over a thread pool;
    results come back in input order whatever the thread count.
    """
    if decoder not in DECODERS:
        raise InvalidArgumentError(f"unknown decoder {decoder!r}, expected one of {DECODERS}")
    if decoder == "beam-shortest" and (instances is None or len(instances) != len(heatmaps)):
        raise InvalidArgumentError("beam-shortest decoding needs one instance per heat-map")
    return list(
        thread_map(
            partial(
                decode_one,
                heatmaps=heatmaps,
                decoder=decoder,
                beam_width=beam_width,
                instances=instances,
                start=start,
                symmetrize=symmetrize,
            ),
            range(len(heatmaps)),
            max_workers=max(1, threads),
            desc=f"decode {decoder}",
            unit="inst",
            disable=quiet,
        )
    )
