import numpy as np

from ..attacks.backdoor import apply_backdoor_pattern
from ..com import InsufficientDataError, ConfigurationError
from ._base_ import Task


class Scoring(Task):
    """ Infer the test set and score benign accuracy and backdoor success. """

    def run(self, dataset, backdoor=None):
        if not len(dataset):
            raise InsufficientDataError("0 test samples recognized.")
        model = self.module

        accuracy = float(np.mean(model.predict(dataset.inputs) == dataset.labels))
        if backdoor is None or backdoor.kind == "none":
            return accuracy, None

        if backdoor.kind == "pattern":
            inputs, targets = apply_backdoor_pattern(dataset.inputs, backdoor, dataset.image_width)
        elif backdoor.is_resolved:
            inputs, targets = backdoor.inputs, backdoor.targets
        else:
            raise ConfigurationError("Sample backdoor has no samples, build it with `from_dataset_samples`.")
        backdoor_rate = float(np.mean(model.predict(inputs) == targets))
        return accuracy, backdoor_rate


def evaluate(model, dataset, backdoor=None):
    """ Benign accuracy on `dataset`, plus the share of backdoored inputs classified as their malicious target.

    Pattern backdoors are stamped on every test image; sample backdoors are
    judged on their own samples. The second value is `None` without a backdoor.
    """
    return Scoring(model).run(dataset, backdoor=backdoor)
