from nonlevel.algebra.binomial import macaulay_expand, macaulay_growth
from nonlevel.utils.errors import InvalidInputError

from .base import BaseCommand


class GrowthCommand(BaseCommand):
    """
    Handles the 'growth' command: the degree-i binomial expansion of h and
    the Macaulay bound h^<i>.
    """

    def execute(self) -> int:
        self.logger.debug("Executing GrowthCommand")
        h, i = self.args.value, self.args.degree
        if h < 0:
            raise InvalidInputError(f"--value must be non-negative, got {h}")

        growth = macaulay_growth(h, i)
        if h == 0:
            terms, expansion_text = [], "0"
        else:
            expansion = macaulay_expand(h, i)
            terms = [{"top": m, "bottom": t} for m, t in expansion.terms]
            expansion_text = str(expansion)

        self.output.line(f"{h} = {expansion_text}")
        self.output.line(f"{h}^<{i}> = {growth}")
        self.output.document(
            "growth",
            [{"value": h, "degree": i, "expansion": terms, "growth": growth}],
        )
        return 0
