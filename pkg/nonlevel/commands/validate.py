from nonlevel.algebra.binomial import first_difference, is_o_sequence, is_unimodal

from .base import BaseCommand


class ValidateCommand(BaseCommand):
    """
    Handles the 'validate' command: Macaulay's condition, reporting the
    first violation. An invalid O-sequence is a result, not an error.
    """

    def execute(self) -> int:
        self.logger.debug("Executing ValidateCommand")
        results = []
        for H in self.sequences():
            report = is_o_sequence(H)
            results.append(
                {
                    "sequence": list(H.values),
                    "valid": report.valid,
                    "violation": report.violation,
                    "bound": report.bound,
                    "first_difference": first_difference(H),
                    "unimodal": is_unimodal(H),
                }
            )
            self.output.line(f"{H}: {report.describe()}")
        self.output.document("validate", results)
        return 0
