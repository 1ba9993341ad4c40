from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional

from nonlevel.algebra.binomial import OSequence
from nonlevel.utils.errors import InvalidInputError
from nonlevel.utils.output import Output
from nonlevel.utils.settings import Settings

CORPORA_DIR = Path(__file__).parent.parent / "config" / "corpora"


def read_corpus(path_or_name: str) -> List[OSequence]:
    """
    One comma-separated sequence per line; '#' starts a comment. A value
    of the form ``@name`` names a corpus shipped in ``config/corpora``.
    """
    if path_or_name.startswith("@"):
        path = CORPORA_DIR / f"{path_or_name[1:]}.txt"
    else:
        path = Path(path_or_name).expanduser()
    if not path.is_file():
        raise InvalidInputError(f"Corpus file not found: {path}")

    sequences = []
    for number, raw_line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        content = raw_line.split("#", 1)[0].strip()
        if not content:
            continue
        try:
            sequences.append(OSequence.parse(content))
        except InvalidInputError as e:
            raise InvalidInputError(f"{path}:{number}: {e}") from e
    return sequences


class BaseCommand(ABC):
    """
    Abstract base class for all commands.
    """

    def __init__(self, args, logger, settings: Optional[Settings] = None, output: Optional[Output] = None):
        self.args = args
        self.logger = logger
        self.settings = settings or Settings()
        self.output = output or Output()

    def sequences(self) -> List[OSequence]:
        """Sequences from --seq or --corpus (exactly one is required)."""
        seq = getattr(self.args, "seq", None)
        corpus = getattr(self.args, "corpus", None)
        if bool(seq) == bool(corpus):
            raise InvalidInputError("Give exactly one of --seq or --corpus")
        if seq:
            return [OSequence.parse(seq)]
        sequences = read_corpus(corpus)
        self.logger.debug(f"Read {len(sequences)} sequences from corpus {corpus}")
        return sequences

    @abstractmethod
    def execute(self) -> int:
        """
        Execute the command logic and return the process exit code.
        """
        pass
