from .binomial import OSequence, is_o_sequence, macaulay_expand, macaulay_growth
from .levelness import Criterion, LevelVerdict, level_check
from .monomial import Monomial, MonomialIdeal, lex_ideal
from .resolution import BettiTable, ek_betti
from .typevector import parse_typevector, typevector_from_hf
