""" Core methods and class. """

import time
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import com
from .com import ConfigurationError, RoundError, logger
from .apps.mlp import flatten, unflatten
from .attacks import AttackConfig, BackdoorSpec, get_attack, sample_backdoor_set
from .data import load_idx, synth_blobs, split_iid, concat_chunks
from .defenses import DefenseChoice, WorkerUpdate, get_defense
from .opt import TrainingConfig
from .task import init_model, train_local, evaluate, write_results, write_sweep

# streams of the setup phase, drawn as round 0
_TRAIN_DATA_STREAM = 0
_TEST_DATA_STREAM = 1
_SPLIT_STREAM = 2
_INIT_STREAM = 3

DATASET_KINDS = ("blobs", "idx")


@dataclass(frozen=True)
class DatasetSource:
    """ Synthetic blobs, or an MNIST-style IDX train/test pair. """
    kind: str = "blobs"
    blob_classes: int = 4
    blob_dim: int = 64
    blob_samples_per_class: int = 1000
    blob_test_samples_per_class: int = 250
    blob_spread: float = 0.05
    train_images: Optional[str] = None
    train_labels: Optional[str] = None
    test_images: Optional[str] = None
    test_labels: Optional[str] = None
    image_width: Optional[int] = None

    def validate(self):
        if self.kind not in DATASET_KINDS:
            raise ConfigurationError("Unknown dataset `%s`. Pick from `blobs` and `idx`." % self.kind)
        if self.kind == "idx":
            missing = [
                key for key in ("train_images", "train_labels", "test_images", "test_labels")
                if not getattr(self, key)
            ]
            if missing:
                raise ConfigurationError("IDX datasets need %s." % ", ".join("`%s`" % key for key in missing))
        if self.image_width is not None and int(self.image_width) < 1:
            raise ConfigurationError("`image_width` should be positive, got %r." % self.image_width)
        return self

    def load(self, seed, class_count=None):
        """ Returns the (train, test) datasets. """
        if self.kind == "blobs":
            train = synth_blobs(
                self.blob_classes, self.blob_dim, self.blob_samples_per_class, self.blob_spread,
                seed=com.derive_seed(seed, 0, _TRAIN_DATA_STREAM),
            )
            test = synth_blobs(
                self.blob_classes, self.blob_dim, self.blob_test_samples_per_class, self.blob_spread,
                seed=com.derive_seed(seed, 0, _TEST_DATA_STREAM),
            )
        else:
            train = load_idx(self.train_images, self.train_labels, class_count=class_count)
            test = load_idx(self.test_images, self.test_labels, class_count=train.class_count)
        if self.image_width:
            train.image_width = test.image_width = int(self.image_width)
        return train, test


@dataclass(frozen=True)
class ExperimentConfig:
    """ Everything one simulation needs: who takes part, who attacks, who defends, what is learned. """
    n: int = 51
    m: int = 12
    rounds: int = 60
    seed: int = 0
    defense: DefenseChoice = field(default_factory=DefenseChoice)
    attack: AttackConfig = field(default_factory=AttackConfig)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    layer_sizes: tuple = (64, 16, 4)
    dataset: DatasetSource = field(default_factory=DatasetSource)
    n_threads: int = 1
    out_csv: Optional[str] = None
    out_json: Optional[str] = None

    def validate(self):
        if self.n < 1:
            raise ConfigurationError("`n` should be positive, got %r." % self.n)
        if not 0 <= self.m < self.n:
            raise ConfigurationError("Expect 0 <= m < n, got n=%d and m=%d." % (self.n, self.m))
        if self.rounds < 1:
            raise ConfigurationError("`rounds` should be positive, got %r." % self.rounds)
        if self.seed < 0:
            raise ConfigurationError("`seed` should be non-negative, got %r." % self.seed)
        if len(self.layer_sizes) < 2 or min(self.layer_sizes) < 1:
            raise ConfigurationError("`layer_sizes` needs at least 2 positive sizes, got %s." % list(self.layer_sizes))
        if self.n_threads != "auto" and int(self.n_threads) < 0:
            raise ConfigurationError("`n_threads` should be non-negative or `auto`, got %r." % self.n_threads)
        self.defense.validate(self.n)
        self.attack.validate(class_count=self.layer_sizes[-1])
        self.training.validate()
        self.dataset.validate()
        if self.attack.kind != "none" and self.m == 1 and not self.attack.omniscient:
            raise ConfigurationError(
                "A non-omniscient attacker needs at least 2 corrupted workers to estimate statistics."
            )
        return self

    @classmethod
    def from_flat(cls, values):
        """ Build from a flat key/value mapping, as read from a config file. """
        unknown = sorted(set(values) - set(FLAT_KEYS))
        if unknown:
            raise ConfigurationError("Unknown configuration keys: %s." % ", ".join(unknown))

        sections = {name: {} for name in ("", "defense", "attack", "backdoor", "training", "dataset")}
        for key, value in values.items():
            section, name = FLAT_KEYS[key]
            if isinstance(value, list):
                value = tuple(value)
            sections[section][name] = value

        top = sections[""]
        if "m_assumed" not in sections["defense"]:
            sections["defense"]["m_assumed"] = top.get("m", cls.m)
        try:
            backdoor = BackdoorSpec(**sections["backdoor"])
            attack = AttackConfig(backdoor=backdoor, **sections["attack"])
            return cls(
                defense=DefenseChoice(**sections["defense"]),
                attack=attack,
                training=TrainingConfig(**sections["training"]),
                dataset=DatasetSource(**sections["dataset"]),
                **top,
            )
        except TypeError as e:
            raise ConfigurationError("Invalid configuration: %s" % e)

    def to_flat(self):
        """ Inverse of `from_flat`; `None` values are left out. """
        values = {}
        for key, (section, name) in FLAT_KEYS.items():
            if section == "":
                owner = self
            elif section == "backdoor":
                owner = self.attack.backdoor
            else:
                owner = getattr(self, section)
            value = getattr(owner, name)
            if value is None:
                continue
            values[key] = list(value) if isinstance(value, tuple) else value
        return values


# flat config key -> (section, field)
FLAT_KEYS = {
    "n": ("", "n"),
    "m": ("", "m"),
    "rounds": ("", "rounds"),
    "seed": ("", "seed"),
    "layer_sizes": ("", "layer_sizes"),
    "n_threads": ("", "n_threads"),
    "out_csv": ("", "out_csv"),
    "out_json": ("", "out_json"),
    "defense": ("defense", "kind"),
    "m_assumed": ("defense", "m_assumed"),
    "cluster_threshold": ("defense", "cluster_threshold"),
    "attack": ("attack", "kind"),
    "z": ("attack", "z"),
    "omniscient": ("attack", "omniscient"),
    "sign": ("attack", "sign"),
    "alpha": ("attack", "alpha"),
    "local_epochs": ("attack", "local_epochs"),
    "inner_optimizer": ("attack", "inner_optimizer"),
    "delta_reduction": ("attack", "delta_reduction"),
    "backdoor": ("backdoor", "kind"),
    "backdoor_size": ("backdoor", "size"),
    "backdoor_intensity": ("backdoor", "intensity"),
    "backdoor_target": ("backdoor", "target"),
    "backdoor_samples": ("backdoor", "sample_count"),
    "backdoor_sample_indices": ("backdoor", "indices"),
    "learning_rate": ("training", "learning_rate"),
    "momentum": ("training", "momentum"),
    "l2_weight": ("training", "l2_weight"),
    "batch_size": ("training", "batch_size"),
    "epochs": ("training", "epochs"),
    "dataset": ("dataset", "kind"),
    "blob_classes": ("dataset", "blob_classes"),
    "blob_dim": ("dataset", "blob_dim"),
    "blob_samples_per_class": ("dataset", "blob_samples_per_class"),
    "blob_test_samples_per_class": ("dataset", "blob_test_samples_per_class"),
    "blob_spread": ("dataset", "blob_spread"),
    "train_images": ("dataset", "train_images"),
    "train_labels": ("dataset", "train_labels"),
    "test_images": ("dataset", "test_images"),
    "test_labels": ("dataset", "test_labels"),
    "image_width": ("dataset", "image_width"),
}


@dataclass(frozen=True)
class RoundRecord:
    """ Test-set metrics of the aggregated model after one round. """
    round: int
    accuracy: float
    backdoor_rate: Optional[float] = None
    param_norm: float = 0.0
    krum_selected: Optional[int] = None


class Simulator:
    """ Synchronous SGD with a parameter server, m corrupted workers and a defense.

    Every round the server broadcasts its parameters, each worker trains on
    its own chunk, the attacker overwrites the corrupted workers' updates,
    and the defense aggregates them into the next parameters. The returned
    model is the one with the best test accuracy.

    Args:
        config: ExperimentConfig.
    """

    def __init__(self, config):
        self.config = config.validate()
        self.records = []
        self.summary = None
        self.params = None
        self.best_params = None

    def __repr__(self):
        config = self.config
        return "byzsim.Simulator(n=%d, m=%d, rounds=%d, defense=%s, attack=%s)" % (
            config.n, config.m, config.rounds, config.defense.kind, config.attack.kind,
        )

    def run(self, train=None, test=None):
        """ Run all rounds and write results when output paths are configured.

        Args:
            train: Dataset. Loaded from the config when omitted.
            test: Dataset. Loaded from the config when omitted.
        Returns:
            (list of RoundRecord, summary dict)
        """
        config = self.config
        tic = time.time()
        if train is None or test is None:
            train, test = config.dataset.load(config.seed, class_count=config.layer_sizes[-1])
        self._check_data(train, test)

        n, m = config.n, config.m
        split = split_iid(train, n, com.derive_seed(config.seed, 0, _SPLIT_STREAM))
        chunks = [train.subset(chunk) for chunk in split.chunks]
        corrupted_ids = list(range(n - m, n))
        corrupted_pool = concat_chunks(split, corrupted_ids) if m else np.zeros(0, dtype=np.int64)

        backdoor = self._resolve_backdoor(train)
        defense = get_defense(config.defense)
        attack = get_attack(config.attack, n, m, layer_sizes=list(config.layer_sizes), training=config.training)
        logger.info(
            "Running %d rounds with %d workers (%d corrupted), defense %r, attack %r",
            config.rounds, n, m, defense, attack,
        )

        params = flatten(init_model(config.layer_sizes, com.derive_seed(config.seed, 0, _INIT_STREAM)))
        self.records = []
        best_accuracy = -1.0
        with com.MultiThread(config.n_threads) as pool:
            last_tic = time.time()
            for t in range(1, config.rounds + 1):
                try:
                    params, record = self._run_round(
                        t, params, chunks, pool, defense, attack, corrupted_ids, corrupted_pool, backdoor, train, test,
                    )
                except RoundError:
                    raise
                except Exception as e:
                    raise RoundError(t, e) from e
                self.records.append(record)

                if record.accuracy > best_accuracy:
                    best_accuracy = record.accuracy
                    self.best_params = params.copy()

                info = "round %d/%d, accuracy %.4f" % (t, config.rounds, record.accuracy)
                if record.backdoor_rate is not None:
                    info += ", backdoor rate %.4f" % record.backdoor_rate
                info += ", %.2f rounds/sec" % (1.0 / max(time.time() - last_tic, 1e-9))
                logger.info(info)
                last_tic = time.time()

        self.params = params
        self.summary = self._summarize(time.time() - tic)
        if config.out_csv or config.out_json:
            write_results(self.records, self.summary, csv_path=config.out_csv, json_path=config.out_json)
        return self.records, self.summary

    def _run_round(self, t, params, chunks, pool, defense, attack, corrupted_ids, corrupted_pool, backdoor, train, test):
        config = self.config
        model = unflatten(params, config.layer_sizes)

        # each worker trains on its own chunk with its own stream
        def train_one(worker_id):
            seed = com.derive_seed(config.seed, t, worker_id)
            return WorkerUpdate(worker_id, train_local(model, chunks[worker_id], config.training, seed))

        updates = pool.map(train_one, range(config.n))

        # malicious intervention
        if attack is not None:
            backdoor_set = None
            if config.attack.kind == "backdoor":
                rng = np.random.default_rng(com.derive_seed(config.seed, t, config.n))
                backdoor_set = sample_backdoor_set(backdoor, train, corrupted_pool, rng)
            malicious = attack.craft(updates, corrupted_ids, params, backdoor_set=backdoor_set)
            corrupted = set(corrupted_ids)
            updates = [
                WorkerUpdate(update.worker_id, malicious) if update.worker_id in corrupted else update
                for update in updates
            ]

        result = defense.aggregate(updates)
        accuracy, backdoor_rate = evaluate(unflatten(result.params, config.layer_sizes), test, backdoor)
        record = RoundRecord(
            round=t,
            accuracy=accuracy,
            backdoor_rate=backdoor_rate,
            param_norm=float(np.linalg.norm(result.params)),
            krum_selected=result.selected,
        )
        return result.params, record

    def _check_data(self, train, test):
        sizes = self.config.layer_sizes
        for name, dataset in (("train", train), ("test", test)):
            if dataset.n_features != sizes[0]:
                raise ConfigurationError(
                    "The %s set has %d features but the model expects %d." % (name, dataset.n_features, sizes[0])
                )
            if dataset.class_count > sizes[-1]:
                raise ConfigurationError(
                    "The %s set has %d classes but the model outputs %d." % (name, dataset.class_count, sizes[-1])
                )

    def _resolve_backdoor(self, train):
        """ The backdoor to score every round, with sample backdoors bound to their images. """
        spec = self.config.attack.backdoor
        if spec.kind == "none":
            return None
        if spec.kind == "sample" and not spec.is_resolved:
            spec = BackdoorSpec.from_dataset_samples(
                train, spec.indices, size=spec.size, intensity=spec.intensity,
                target=spec.target, sample_count=spec.sample_count,
            )
        return spec.validate(class_count=train.class_count)

    def _summarize(self, wall_time):
        best = max(self.records, key=lambda record: record.accuracy)     # first of equal maxima
        return {
            "config": self.config.to_flat(),
            "best_round": best.round,
            "best_accuracy": best.accuracy,
            "backdoor_rate": best.backdoor_rate,
            "final_accuracy": self.records[-1].accuracy,
            "rounds": len(self.records),
            "wall_time": wall_time,
        }


def run_experiment(config, train=None, test=None):
    """ Run one simulation. Returns (list of RoundRecord, summary dict). """
    return Simulator(config).run(train=train, test=test)


def run_sweep(config, zs, ms=None, out_csv=None):
    """ One experiment per (z, m) pair, everything else held fixed.

    The defense stays tuned for the actual number of corrupted workers.
    Per-run output paths of `config` are ignored.

    Returns:
        List of dicts with keys `z, m, best_round, best_accuracy, backdoor_rate`.
    """
    ms = list(ms) if ms else [config.m]
    train, test = config.dataset.load(config.seed, class_count=config.layer_sizes[-1])

    rows = []
    for m in ms:
        for z in zs:
            run_config = replace(
                config,
                m=int(m),
                defense=replace(config.defense, m_assumed=int(m)),
                attack=replace(config.attack, z=float(z)),
                out_csv=None,
                out_json=None,
            )
            logger.info("Sweep: z=%s, m=%d", z, m)
            _, summary = run_experiment(run_config, train=train, test=test)
            rows.append({
                "z": float(z),
                "m": int(m),
                "best_round": summary["best_round"],
                "best_accuracy": summary["best_accuracy"],
                "backdoor_rate": summary["backdoor_rate"],
            })

    if out_csv:
        write_sweep(rows, out_csv)
    return rows
