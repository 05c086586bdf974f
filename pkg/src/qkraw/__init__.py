"""Quantum matrix algebra M_q(3), SU_q(3) symmetric matrix elements and q-Krawtchouk polynomials."""

from .corep import coaction_expand, h_element, h_right_element, t_element
from .ncalg import NCPoly, antipode, coproduct, counit, normal_order_word, quantum_det, star
from .qscalar import Q, LaurentScalar, QPow, q_binomial, q_multinomial, q_pochhammer
from .reps import apply_matrix_element, elementary_op, word_op
from .suites import SuiteParams, run_suite

__version__ = "0.1.0"
