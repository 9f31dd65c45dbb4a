from .dataset import Dataset, DataSplit, split_iid, concat_chunks
from .blobs import synth_blobs, get_class_centers
from .idx import load_idx, write_idx

__all__ = [
    "Dataset",
    "DataSplit",
    "split_iid",
    "concat_chunks",
    "synth_blobs",
    "get_class_centers",
    "load_idx",
    "write_idx",
]
