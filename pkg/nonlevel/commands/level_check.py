from nonlevel.algebra.levelness import level_check

from .base import BaseCommand

NOT_LEVEL_EXIT_CODE = 10


class LevelCheckCommand(BaseCommand):
    """
    Handles the 'level-check' command. Exits with NOT_LEVEL_EXIT_CODE when
    any sequence is certified non-level.
    """

    def execute(self) -> int:
        self.logger.debug("Executing LevelCheckCommand")
        results = []
        any_not_level = False
        for H in self.sequences():
            verdict = level_check(H)
            any_not_level = any_not_level or verdict.not_level
            results.append(verdict.to_dict())

            if verdict.not_level:
                self.output.line(
                    f"{H}: NotLevel via {verdict.finding.criterion.value}, "
                    f"socle degrees {verdict.socle_degrees}"
                )
                self.output.lines(f"  {line}" for line in verdict.evidence)
            else:
                self.output.line(f"{H}: Unknown")
                for name, notes in verdict.diagnostics.items():
                    self.output.lines(f"  {name}: {note}" for note in notes)

        self.output.document("level-check", results)
        return NOT_LEVEL_EXIT_CODE if any_not_level else 0
