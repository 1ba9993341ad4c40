from nonlevel.algebra.monomial import lex_ideal, minimal_generators

from .base import BaseCommand


def variable_count(args, H) -> int:
    """--variables when given, otherwise h_1 (at least one variable)."""
    n = getattr(args, "variables", None)
    return n if n is not None else max(H.codim, 1)


class LexIdealCommand(BaseCommand):
    """
    Handles the 'lex-ideal' command: the lex-segment ideal of each sequence,
    slice by slice through the first full degree, or its minimal generators.
    """

    def execute(self) -> int:
        self.logger.debug("Executing LexIdealCommand")
        results = []
        for H in self.sequences():
            n = variable_count(self.args, H)
            I = lex_ideal(H, n)
            if self.args.gens_only:
                by_degree = minimal_generators(I)
                key = "generators"
            else:
                degrees = range(1, H.socle_degree + 2)
                by_degree = {d: list(I.slice(d)) for d in degrees if I.slice(d)}
                key = "slices"

            rows = [
                {"degree": d, "monomials": [str(m) for m in monomials]}
                for d, monomials in sorted(by_degree.items())
            ]
            results.append({"sequence": list(H.values), "variables": n, key: rows})

            self.output.line(f"{H} ({n} variables), {key}:")
            for row in rows:
                self.output.line(f"  degree {row['degree']}: " + ", ".join(row["monomials"]))
        self.output.document("lex-ideal", results)
        return 0
