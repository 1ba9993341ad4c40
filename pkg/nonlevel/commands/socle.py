from nonlevel.algebra.monomial import lex_ideal
from nonlevel.algebra.oracle import socle_monomials
from nonlevel.algebra.resolution import cancellation_bounds, ek_betti

from .base import BaseCommand
from .lex_ideal import variable_count


class SocleCommand(BaseCommand):
    """
    Handles the 'socle' command: socle monomials of the lex algebra and the
    consecutive-cancellation lower bounds from its Betti table.
    """

    def execute(self) -> int:
        self.logger.debug("Executing SocleCommand")
        results = []
        for H in self.sequences():
            n = variable_count(self.args, H)
            I = lex_ideal(H, n)
            socle = socle_monomials(I)
            bounds = cancellation_bounds(ek_betti(I))

            results.append(
                {
                    "sequence": list(H.values),
                    "variables": n,
                    "socle": [
                        {"degree": d, "monomials": [str(m) for m in monomials]}
                        for d, monomials in sorted(socle.items())
                    ],
                    "bounds": [
                        {"shift": b.shift, "lower_bound": b.lower_bound, "socle_degree": b.socle_degree}
                        for b in bounds
                    ],
                }
            )

            self.output.line(f"{H} ({n} variables):")
            for d, monomials in sorted(socle.items()):
                self.output.line(f"  socle degree {d}: " + ", ".join(str(m) for m in monomials))
            for b in bounds:
                if b.lower_bound:
                    self.output.line(
                        f"  shift {b.shift}: at least {b.lower_bound} socle generator(s) "
                        f"in degree {b.socle_degree} for every algebra with this h-vector"
                    )
        self.output.document("socle", results)
        return 0
