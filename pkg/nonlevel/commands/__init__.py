from .base import BaseCommand
from .validate import ValidateCommand
from .growth import GrowthCommand
from .lex_ideal import LexIdealCommand
from .betti import BettiCommand
from .level_check import LevelCheckCommand
from .typevector import TypeVectorCommand
from .socle import SocleCommand
from .enumerate import EnumerateCommand
