"""
Checkpoint container.

    TSPGCN-CKPT 1 <header_bytes>\n
    <header: UTF-8 JSON, sorted keys>
    <payload: little-endian float32 arrays, concatenated in header order>

The header holds `config` (architecture), `step` (Adam step counter) and
`entries`, a list of {name, section, shape, dtype} with section one of
param, buffer, adam_m, adam_v. Entries are sorted by name within a section
and sections appear in that order. No timestamps are written.
"""

import json
import logging

import numpy as np

from tspgcn.autodiff.params import ParamStore
from tspgcn.errors import CheckpointError
from tspgcn.utils.utils import ensure_parent_dir

logger = logging.getLogger(__name__)

MAGIC = "TSPGCN-CKPT"
FORMAT_VERSION = 1
PAYLOAD_DTYPE = "<f4"
SECTIONS = ("param", "buffer", "adam_m", "adam_v")


def _section_arrays(store, section):
    if section == "param":
        return {name: p.values for name, p in store.params.items()}
    return {"buffer": store.buffers, "adam_m": store.adam_m, "adam_v": store.adam_v}[section]


def save_checkpoint(store: ParamStore, config: dict, path) -> None:
    entries, chunks = [], []
    for section in SECTIONS:
        arrays = _section_arrays(store, section)
        for name in sorted(arrays):
            array = np.ascontiguousarray(arrays[name], dtype=PAYLOAD_DTYPE)
            entries.append({"name": name, "section": section, "shape": list(array.shape), "dtype": PAYLOAD_DTYPE})
            chunks.append(array.tobytes())
    header = json.dumps(
        {"config": config, "entries": entries, "step": store.step},
        sort_keys=True,
        separators=(",", ":"),
    ).encode("utf-8")
    ensure_parent_dir(path)
    with open(path, "wb") as f:
        f.write(f"{MAGIC} {FORMAT_VERSION} {len(header)}\n".encode("ascii"))
        f.write(header)
        for chunk in chunks:
            f.write(chunk)
    logger.info("saved checkpoint with %d entries to %s", len(entries), path)


def load_checkpoint(path, dtype=np.float32):
    """Return (ParamStore, config dict)."""
    with open(path, "rb") as f:
        first_line = f.readline().decode("ascii", errors="replace").split()
        if len(first_line) != 3 or first_line[0] != MAGIC:
            raise CheckpointError(f"{path}: not a checkpoint file")
        if first_line[1] != str(FORMAT_VERSION):
            raise CheckpointError(f"{path}: unsupported checkpoint version {first_line[1]}")
        try:
            header = json.loads(f.read(int(first_line[2])).decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as e:
            raise CheckpointError(f"{path}: corrupt header: {e}") from e
        payload = f.read()

    store = ParamStore(dtype)
    store.step = int(header.get("step", 0))
    offset = 0
    itemsize = np.dtype(PAYLOAD_DTYPE).itemsize
    for entry in header["entries"]:
        count = int(np.prod(entry["shape"], dtype=np.int64))
        end = offset + count * itemsize
        if end > len(payload):
            raise CheckpointError(f"{path}: payload truncated at entry {entry['name']!r}")
        array = np.frombuffer(payload[offset:end], dtype=PAYLOAD_DTYPE).reshape(entry["shape"])
        offset = end
        section, name = entry["section"], entry["name"]
        if section == "param":
            store.add(name, array)
        elif section == "buffer":
            store.add_buffer(name, array)
        elif section in ("adam_m", "adam_v"):
            if name not in store.params:
                raise CheckpointError(f"{path}: optimizer state for unknown parameter {name!r}")
            getattr(store, section)[name] = array.astype(store.dtype)
        else:
            raise CheckpointError(f"{path}: unknown section {section!r}")
    if offset != len(payload):
        raise CheckpointError(f"{path}: {len(payload) - offset} trailing payload bytes")
    return store, header["config"]
