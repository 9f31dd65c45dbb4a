""" Reader and writer of the IDX container used by MNIST.

Layout (big-endian):
    [offset] [type]          [value]
    0000     32 bit integer  0x00000803 (images) / 0x00000801 (labels)
    0004     32 bit integer  number of items
    0008     32 bit integer  number of rows     (images only)
    0012     32 bit integer  number of columns  (images only)
    ....     unsigned byte   pixels / labels, row-major
"""

import gzip
import struct

import numpy as np

from .dataset import Dataset
from ..com import FormatError, ShapeError, logger

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801
GZIP_MAGIC = b"\x1f\x8b"


def _read_bytes(path):
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as e:
        raise FormatError("Can't read file (%s)" % e.strerror, path=path)
    if raw[:2] == GZIP_MAGIC:
        try:
            raw = gzip.decompress(raw)
        except (OSError, EOFError) as e:
            raise FormatError("Corrupted gzip stream (%s)" % e, path=path)
    return raw


def _parse(raw, path, magic, n_dims):
    header_size = 4 * (1 + n_dims)
    if len(raw) < header_size:
        raise FormatError("Truncated header, expect %d bytes" % header_size, path=path, offset=len(raw))

    got_magic = struct.unpack(">I", raw[:4])[0]
    if got_magic != magic:
        raise FormatError("Bad magic number 0x%08x, expect 0x%08x" % (got_magic, magic), path=path, offset=0)

    dims = struct.unpack(">" + "I" * n_dims, raw[4: header_size])
    n_bytes = int(np.prod(dims, dtype=np.int64))
    if len(raw) - header_size < n_bytes:
        raise FormatError(
            "Truncated data, expect %d bytes after the header but found %d"
            % (n_bytes, len(raw) - header_size),
            path=path, offset=len(raw),
        )
    data = np.frombuffer(raw, dtype=np.uint8, count=n_bytes, offset=header_size)
    return dims, data


def load_idx(images_path, labels_path, class_count=None):
    """ Load an images/labels IDX pair into a `Dataset` scaled to [0, 1].

    Args:
        images_path: string. Path of the images file, plain or gzipped.
        labels_path: string. Path of the labels file, plain or gzipped.
        class_count: int. Defaults to the largest label plus one.
    Returns:
        A `Dataset` with `image_width` set to the column count.
    """
    (n_images, n_rows, n_cols), pixels = _parse(_read_bytes(images_path), images_path, IMAGES_MAGIC, 3)
    (n_labels,), labels = _parse(_read_bytes(labels_path), labels_path, LABELS_MAGIC, 1)
    if n_images != n_labels:
        raise FormatError(
            "Count mismatch between images (%d) and labels (%d)" % (n_images, n_labels),
            path=labels_path, offset=4,
        )

    inputs = pixels.reshape(n_images, n_rows * n_cols).astype(np.float64) / 255.0
    labels = labels.astype(np.int64)
    if class_count is None:
        class_count = int(labels.max()) + 1 if len(labels) else 1
    logger.info("Loaded %d images of %dx%d from %s", n_images, n_rows, n_cols, images_path)
    return Dataset(inputs, labels, class_count, image_width=n_cols)


def write_idx(dataset, images_path, labels_path):
    """ Write a `Dataset` as an IDX pair. Pixel values are scaled by 255 and rounded. """
    width = dataset.image_width
    if dataset.n_features % width:
        raise ShapeError("%d features do not fold into rows of width %d." % (dataset.n_features, width))
    height = dataset.n_features // width

    pixels = np.rint(dataset.inputs * 255.0).astype(np.uint8)
    with open(images_path, "wb") as f:
        f.write(struct.pack(">IIII", IMAGES_MAGIC, len(dataset), height, width))
        f.write(pixels.tobytes())
    with open(labels_path, "wb") as f:
        f.write(struct.pack(">II", LABELS_MAGIC, len(dataset)))
        f.write(dataset.labels.astype(np.uint8).tobytes())
