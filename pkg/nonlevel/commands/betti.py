from nonlevel.algebra.binomial import OSequence
from nonlevel.algebra.levelness import drop_positions
from nonlevel.algebra.monomial import lex_ideal
from nonlevel.algebra.oracle import cross_check_primes, koszul_betti
from nonlevel.algebra.resolution import closed_betti_codim3, ek_betti
from nonlevel.utils.errors import InvalidInputError

from .base import BaseCommand
from .lex_ideal import variable_count


def plateau_parameters(H: OSequence):
    """(d, i, j) of the first drop followed by a plateau, h_1 = 3."""
    if H.codim != 3:
        raise InvalidInputError(f"--method closed needs h_1 = 3, got {H.codim}")
    for d in drop_positions(H):
        if H.h(d + 1) == H.h(d):
            i, j = H.h(d) - d, H.h(d - 1) - H.h(d)
            if 1 <= i <= (d * d + d) // 2:
                return d, i, j
    raise InvalidInputError(
        f"{H} has no drop h_(d-1) > h_d = h_(d+1) with 1 <= h_d - d <= (d^2+d)/2"
    )


class BettiCommand(BaseCommand):
    """
    Handles the 'betti' command: graded Betti numbers of the lex ideal by
    Eliahou-Kervaire, by Koszul homology, or the closed-form pair at shift d+2.
    """

    def execute(self) -> int:
        self.logger.debug(f"Executing BettiCommand (method={self.args.method})")
        results = []
        for H in self.sequences():
            if self.args.method == "closed":
                results.append(self._closed(H))
                continue

            I = lex_ideal(H, variable_count(self.args, H))
            if self.args.method == "ek":
                table = ek_betti(I)
            elif self.args.cross_check:
                table = cross_check_primes(
                    I, (self.settings.oracle_prime, self.settings.cross_check_prime)
                )
            else:
                table = koszul_betti(I, prime=self.settings.oracle_prime)

            results.append({"sequence": list(H.values), "table": table.to_rows()})
            self.output.line(f"{H}:")
            self.output.line(table.diagram())
        self.output.document("betti", results)
        return 0

    def _closed(self, H: OSequence) -> dict:
        d, i, j = plateau_parameters(H)
        diagnostics = []
        beta1, beta2 = closed_betti_codim3(d, i, j, diagnostics)
        for note in diagnostics:
            self.logger.warning(note)

        self.output.line(f"{H}: d={d}, i={i}, j={j}")
        self.output.line(f"  beta_1,{d + 2} = {'?' if beta1 is None else beta1}")
        self.output.line(f"  beta_2,{d + 2} = {'?' if beta2 is None else beta2}")
        return {
            "sequence": list(H.values),
            "d": d,
            "i": i,
            "j": j,
            "table": [
                {"q": 1, "shift": d + 2, "mult": beta1},
                {"q": 2, "shift": d + 2, "mult": beta2},
            ],
            "diagnostics": diagnostics,
        }
