from nonlevel.algebra.binomial import is_o_sequence
from nonlevel.algebra.typevector import (
    alpha,
    format_typevector,
    hf_from_typevector,
    parse_typevector,
    shift_report_p2,
    shift_report_p3,
    sigma,
    typevector_from_hf,
)
from nonlevel.utils.errors import InvalidInputError, NotDecomposableError

from .base import BaseCommand


class TypeVectorCommand(BaseCommand):
    """
    Handles the 'typevector' command: greedy extraction from h-vectors
    (--seq/--corpus) or inspection of a given vector (--tv).
    """

    def execute(self) -> int:
        self.logger.debug("Executing TypeVectorCommand")
        if self.args.tv:
            if self.args.seq or self.args.corpus:
                raise InvalidInputError("--tv cannot be combined with --seq or --corpus")
            results = [self._describe(self.args.tv)]
        else:
            results = [self._extract(H) for H in self.sequences()]
        self.output.document("typevector", results)
        return 0

    def _shifts(self, T) -> dict:
        if T.level == 2:
            report = shift_report_p2(T)
        elif T.level == 3:
            report = shift_report_p3(T)
        else:
            raise InvalidInputError(f"Shift reports need a 2- or 3-type vector, got level {T.level}")
        self.output.line(f"  noncancelable shifts: {report.noncancelable_shifts}")
        self.output.line(f"  forced socle degrees: {report.socle_degrees}")
        self.output.lines(f"  {note}" for note in report.notes)
        return report.to_dict()

    def _describe(self, text: str) -> dict:
        T = parse_typevector(text)
        result = {
            "typevector": format_typevector(T),
            "level": T.level,
            "alpha": alpha(T),
            "sigma": sigma(T),
        }
        self.output.line(
            f"{result['typevector']}: level {T.level}, alpha {result['alpha']}, sigma {result['sigma']}"
        )
        if self.args.to_hf:
            H = hf_from_typevector(T)
            result["hf"] = list(H.values)
            self.output.line(f"  h-vector: {H}")
        if self.args.shifts:
            result["shifts"] = self._shifts(T)
        return result

    def _extract(self, H) -> dict:
        report = is_o_sequence(H)
        if not report:
            raise InvalidInputError(f"{H} is not an O-sequence: {report.describe()}")
        try:
            T = typevector_from_hf(H)
        except NotDecomposableError as e:
            self.logger.info(f"{H} is not decomposable: {e}")
            self.output.line(f"{H}: not decomposable ({e})")
            return {"sequence": list(H.values), "decomposable": False, "reason": str(e)}

        result = {
            "sequence": list(H.values),
            "decomposable": True,
            "typevector": format_typevector(T),
            "alpha": alpha(T),
            "sigma": sigma(T),
        }
        self.output.line(f"{H}: {result['typevector']}")
        if self.args.shifts:
            result["shifts"] = self._shifts(T)
        return result
