import logging
import threading

import pytest

from byzsim import com
from byzsim.com import (
    AttackerMajorityError,
    ConfigurationError,
    FormatError,
    MultiThread,
    RoundError,
    ShapeError,
    derive_seed,
)


def test_set_verbosity():
    level = com.logger.level
    try:
        com.set_verbosity(1)
        assert com.logger.level == logging.WARNING
        com.set_verbosity(0)
        assert com.logger.level == logging.ERROR
        with pytest.raises(ValueError):
            com.set_verbosity(3)
    finally:
        com.logger.setLevel(level)


def test_set_log(tmp_path):
    path = tmp_path / "byzsim.log"
    level = com.logger.level
    com.set_log(str(path))
    handler = com.logger.handlers[-1]
    try:
        com.logger.info("hello %d", 42)
        handler.flush()
        assert "hello 42" in path.read_text()
    finally:
        com.logger.removeHandler(handler)
        handler.close()
        com.logger.setLevel(level)


def test_derive_seed():
    assert derive_seed(0, 1, 2) == derive_seed(0, 1, 2)
    seeds = {derive_seed(7, t, w) for t in range(20) for w in range(20)}
    assert len(seeds) == 400
    assert derive_seed(0, 1, 2) != derive_seed(0, 2, 1)
    with pytest.raises(ValueError):
        derive_seed(0, -1)


def test_pool_keeps_input_order():
    seen = set()

    def work(i):
        seen.add(threading.get_ident())
        return i * i

    with MultiThread(4) as pool:
        assert pool.map(work, range(50)) == [i * i for i in range(50)]
    with MultiThread(1) as pool:
        assert pool.pool is None
        assert pool.map(work, iter(range(5))) == [0, 1, 4, 9, 16]


def test_pool_size():
    assert MultiThread("auto").n >= 1
    with pytest.raises(ValueError):
        MultiThread(-2)


def test_exit_codes():
    assert ConfigurationError("x").exit_code == 2
    assert AttackerMajorityError("x").exit_code == 2
    assert FormatError("x").exit_code == 3
    assert ShapeError("x").exit_code == 4
    assert isinstance(ConfigurationError("x"), ValueError)

    error = RoundError(4, ShapeError("bad"))
    assert error.round == 4 and error.exit_code == 4 and error.category == "data"
    assert str(error) == "Round 4: ShapeError: bad"
    assert RoundError(1, ZeroDivisionError("zero")).exit_code == 5


def test_format_error_message():
    assert str(FormatError("Bad magic", path="a.idx", offset=2)) == "a.idx: Bad magic (byte offset 2)"
