from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, Iterator, List, Tuple

from nonlevel.algebra.binomial import OSequence, enumerate_o_sequences, is_unimodal
from nonlevel.algebra.levelness import Criterion, level_check
from nonlevel.utils.errors import InvalidInputError

from .base import BaseCommand


def classify(values: Tuple[int, ...]) -> dict:
    """Verdict summary for one sequence. Module level so worker processes can pickle it."""
    verdict = level_check(OSequence(values))
    return {
        "sequence": list(values),
        "verdict": verdict.verdict,
        "criterion": verdict.finding.criterion.value if verdict.finding else None,
        "socle_degrees": verdict.socle_degrees,
        "unimodal": is_unimodal(values),
    }


def census(rows: Iterable[dict]) -> Dict[str, object]:
    counts: Counter = Counter()
    criteria = Counter({c.value: 0 for c in Criterion})
    for row in rows:
        counts["total"] += 1
        not_level = row["verdict"] == "NotLevel"
        counts["not_level" if not_level else "unknown"] += 1
        if not_level:
            criteria[row["criterion"]] += 1
        if row["unimodal"]:
            counts["unimodal"] += 1
        else:
            counts["non_unimodal"] += 1
            if not_level:
                counts["non_unimodal_refuted"] += 1
    keys = ("total", "not_level", "unknown", "unimodal", "non_unimodal", "non_unimodal_refuted")
    summary: Dict[str, object] = {key: counts[key] for key in keys}
    summary["criteria"] = dict(criteria)
    return summary


class EnumerateCommand(BaseCommand):
    """
    Handles the 'enumerate' command: every O-sequence in the box with its
    verdict, then a census. Results come back in enumeration order whatever
    the worker count.
    """

    def _classified(self, sequences: List[Tuple[int, ...]], jobs: int) -> Iterator[dict]:
        if jobs <= 1:
            yield from map(classify, sequences)
            return
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(classify, sequences, chunksize=self.settings.enumerate_chunk_size)

    def execute(self) -> int:
        jobs = self.args.jobs if self.args.jobs is not None else self.settings.enumerate_jobs
        if jobs < 1:
            raise InvalidInputError(f"--jobs must be at least 1, got {jobs}")
        self.logger.debug(f"Executing EnumerateCommand with {jobs} worker(s)")

        sequences = [
            H.values
            for H in enumerate_o_sequences(self.args.codim, self.args.max_socle_degree, self.args.max_value)
        ]
        self.logger.info(f"Classifying {len(sequences)} O-sequences")

        rows = []
        for row in self._classified(sequences, jobs):
            rows.append(row)
            label = row["verdict"]
            if row["criterion"]:
                label += f" via {row['criterion']}, socle degrees {row['socle_degrees']}"
            self.output.line(",".join(str(v) for v in row["sequence"]) + f": {label}")

        summary = census(rows)
        self.output.line(
            f"total {summary['total']}: {summary['not_level']} NotLevel, {summary['unknown']} Unknown"
        )
        for name, count in summary["criteria"].items():
            self.output.line(f"  {name}: {count}")
        self.output.line(
            f"non-unimodal {summary['non_unimodal']}, of which refuted {summary['non_unimodal_refuted']}"
        )
        self.output.document("enumerate", rows, census=summary)
        return 0
