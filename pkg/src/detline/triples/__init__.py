from .core import (
    AuxFrames, ExactTriple, SnakeData, canonical_aux, iso_T_dprime, iso_T_prime, psi,
    psi_sign_exponent, random_aux, snake, validate_triple, zigzag,
)
from .special import (
    EdgeMap, ExactSquare, compose_triples, composition_triple, ctilde, ctilde_via_psi,
    direct_sum_operator, direct_sum_triple, dual_triple, oplus, oplus_via_psi, validate_square,
)
from .stab import (
    StabData, StabRow, a_factor, delta_triple, hat_iso, inclusion, inv_iso, invert_line_map,
    iso_delta, km_element, km_iso_delta, omega_N, stab_triple, stabilize,
)

# short aliases
direct_sum = direct_sum_triple
composition = composition_triple
