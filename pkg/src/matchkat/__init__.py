"""MatchKAT: ternary match expressions, packet-filtering terms, NetKAT
translation, match-action table compilation and an LBA encoding."""

from .config import limits
from .encoders import (
    CounterLayout, Rule, Table, assign_value, compile_counter, compile_priority,
    compose_pipeline, encode_increment, encode_range_assign, encode_range_test,
    reference_table_semantics, test_value,
)
from .errors import CapacityError, IllFormedError, MatchKATError, ParseError, WidthError
from .generators import generate_random
from .lba import (
    Lba, Transition, Verdict, decide_word, encode_accept, encode_setup, encode_step,
    packet_layout, parity_machine, reachable_set, simulate_lba,
)
from .match import (
    Bot, Compl, Concat, Cube, Empty, Inter, Lit, MatchExpr, Union, dnf_expr, expr_equiv,
    interp, lit, matches, point_match, to_dnf, top,
)
from .netkat import (
    FieldSpec, History, check_lemma1, check_lemma2, check_thm1, check_thm2, from_netkat,
    nk_eval, to_netkat,
)
from .packets import Packet, PacketSet
from .syntax import (
    parse_field_spec, parse_lba, parse_match_expr, parse_netkat, parse_packets, parse_table,
    parse_term, pretty_lba, pretty_match_expr, pretty_netkat, pretty_netkat_program,
    pretty_packets, pretty_table, pretty_term,
)
from .terms import (
    DROP, SKIP, Assign, Drop, Not, Plus, Seq, Skip, Star, Term, Test, apply, bit_test,
    check_well_formed, evaluate, term_equiv,
)

__version__ = "0.1.0"
