import csv
import json

from ..com import logger
from ._base_ import Task

CSV_HEADER = ("round", "accuracy", "backdoor_rate", "param_norm", "krum_selected")


def format_value(value):
    """ Locale-independent CSV field; `None` becomes empty. """
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


class Exportation(Task):
    """ Write per-round records as CSV and the run summary as JSON. """

    def run(self, summary=None, csv_path=None, json_path=None):
        records = self.module
        if csv_path:
            self._write(csv_path, self._write_csv, records)
            logger.info("Saved %d rounds into %s", len(records), csv_path)
        if json_path:
            self._write(json_path, self._write_json, summary or {})
            logger.info("Saved summary into %s", json_path)

    @staticmethod
    def _write(path, writer, content):
        try:
            with open(path, "w", encoding="utf-8", newline="") as fp:
                writer(fp, content)
        except OSError as e:
            raise OSError(e.errno, "Failed to write results: %s" % e.strerror, path) from e

    @staticmethod
    def _write_csv(fp, records):
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow([
                format_value(record.round),
                format_value(record.accuracy),
                format_value(record.backdoor_rate),
                format_value(record.param_norm),
                format_value(record.krum_selected),
            ])

    @staticmethod
    def _write_json(fp, summary):
        json.dump(summary, fp, indent=2)
        fp.write("\n")


def write_results(records, summary, csv_path=None, json_path=None):
    """ Save `records` (list of RoundRecord) to `csv_path` and `summary` (dict) to `json_path`. """
    Exportation(records).run(summary=summary, csv_path=csv_path, json_path=json_path)


SWEEP_HEADER = ("z", "m", "best_round", "best_accuracy", "backdoor_rate")


def write_sweep(rows, csv_path):
    """ Save one summary row per (z, m) experiment. """

    def write_rows(fp, rows):
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow([format_value(row[key]) for key in SWEEP_HEADER])

    Exportation._write(csv_path, write_rows, rows)
    logger.info("Saved %d sweep rows into %s", len(rows), csv_path)
