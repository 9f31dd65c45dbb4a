import csv
import json

import numpy as np
import pytest

from byzsim.apps import MLP
from byzsim.apps.mlp import flatten, unflatten, zeros
from byzsim.attacks import BackdoorSpec
from byzsim.com import InsufficientDataError
from byzsim.core import RoundRecord
from byzsim.data import Dataset, get_class_centers, synth_blobs
from byzsim.opt import TrainingConfig
from byzsim.task import CSV_HEADER, Training, evaluate, init_model, train_local, write_results, write_sweep
from byzsim.task.export import format_value


@pytest.fixture(scope="module")
def blobs():
    return synth_blobs(4, 64, 100, 0.05, seed=0)


def nearest_center_model(class_count, dim):
    centers = get_class_centers(class_count, dim)
    return MLP([dim, class_count], [2.0 * centers.T], [-np.sum(centers ** 2, axis=1)])


def test_zero_epochs_return_broadcast(blobs):
    model = init_model([64, 16, 4], seed=1)
    vector = train_local(model, blobs, TrainingConfig(epochs=0), seed=3)
    np.testing.assert_array_equal(vector, flatten(model))


def test_training_is_seeded(blobs):
    model = init_model([64, 16, 4], seed=1)
    config = TrainingConfig(batch_size=16)
    np.testing.assert_array_equal(train_local(model, blobs, config, seed=5), train_local(model, blobs, config, seed=5))
    assert not np.array_equal(train_local(model, blobs, config, seed=5), train_local(model, blobs, config, seed=6))


def test_training_leaves_broadcast_untouched(blobs):
    model = init_model([64, 16, 4], seed=1)
    before = flatten(model)
    train_local(model, blobs, TrainingConfig(batch_size=16), seed=0)
    np.testing.assert_array_equal(flatten(model), before)


def test_training_learns_separable_blobs(blobs):
    model = init_model([64, 16, 4], seed=2)
    task = Training(model)
    vector = task.run(blobs, TrainingConfig(batch_size=16, epochs=5), seed=0)
    assert len(task.losses) == 5
    assert task.losses[-1] < task.losses[0]

    accuracy, _ = evaluate(unflatten(vector, [64, 16, 4]), synth_blobs(4, 64, 50, 0.05, seed=1))
    assert accuracy >= 0.95


def test_short_last_batch(blobs):
    # 7 samples with batch size 3 is batches of 3, 3 and 1
    model = init_model([64, 4], seed=0)
    vector = train_local(model, blobs.subset(np.arange(7)), TrainingConfig(batch_size=3), seed=0)
    assert np.all(np.isfinite(vector))


def test_empty_chunk_raises(blobs):
    with pytest.raises(InsufficientDataError):
        train_local(init_model([64, 4], seed=0), blobs.subset([]), TrainingConfig(), seed=0)


def test_uniform_model_scores_chance(blobs):
    accuracy, rate = evaluate(zeros([64, 16, 4]), blobs)
    assert accuracy == pytest.approx(0.25)
    assert rate is None


def test_nearest_center_model_is_perfect(blobs):
    accuracy, _ = evaluate(nearest_center_model(4, 64), blobs)
    assert accuracy == 1.0


def test_pattern_backdoor_rate(blobs):
    spec = BackdoorSpec(kind="pattern", target=0)
    # argmax of a uniform prediction is class 0, so every patched image "succeeds"
    _, rate = evaluate(zeros([64, 16, 4]), blobs, backdoor=spec)
    assert rate == 1.0
    _, rate = evaluate(zeros([64, 16, 4]), blobs, backdoor=BackdoorSpec(kind="pattern", target=3))
    assert rate == 0.0


def test_sample_backdoor_rate(blobs):
    spec = BackdoorSpec.from_dataset_samples(blobs, [0, 150, 250, 350])    # labels 0, 1, 2, 3
    _, rate = evaluate(nearest_center_model(4, 64), blobs, backdoor=spec)
    assert rate == 0.0
    _, rate = evaluate(zeros([64, 16, 4]), blobs, backdoor=spec)
    assert rate == pytest.approx(0.25)


def test_empty_test_set_raises():
    empty = Dataset(np.zeros((0, 64)), np.zeros(0, dtype=int), 4)
    with pytest.raises(InsufficientDataError):
        evaluate(zeros([64, 4]), empty)


def test_format_value():
    assert format_value(None) == ""
    assert format_value(3) == "3"
    assert format_value(0.1) == "0.1"
    assert format_value(1.0 / 3.0) == "0.333333333333"


def test_write_results(tmp_path):
    records = [
        RoundRecord(round=t, accuracy=0.5 + t / 10, backdoor_rate=None, param_norm=1.0, krum_selected=None)
        for t in range(3)
    ]
    summary = {"best_round": 2, "best_accuracy": 0.7}
    csv_path, json_path = tmp_path / "rounds.csv", tmp_path / "summary.json"
    write_results(records, summary, csv_path=str(csv_path), json_path=str(json_path))

    lines = csv_path.read_text().splitlines()
    assert len(lines) == 4
    assert lines[0] == ",".join(CSV_HEADER)
    rows = list(csv.DictReader(lines))
    assert [row["round"] for row in rows] == ["0", "1", "2"]
    assert rows[0]["backdoor_rate"] == "" and rows[0]["krum_selected"] == ""
    assert json.loads(json_path.read_text()) == summary


def test_write_results_reports_bad_path(tmp_path):
    with pytest.raises(OSError, match="Failed to write results"):
        write_results([], {}, csv_path=str(tmp_path / "missing" / "rounds.csv"))


def test_write_sweep(tmp_path):
    path = tmp_path / "sweep.csv"
    write_sweep([{"z": 0.5, "m": 12, "best_round": 3, "best_accuracy": 0.9, "backdoor_rate": None}], str(path))
    assert path.read_text().splitlines() == ["z,m,best_round,best_accuracy,backdoor_rate", "0.5,12,3,0.9,"]
