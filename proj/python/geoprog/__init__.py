"""Exact arithmetic progressions in geodesic length spectra."""

import json

from ._geoprog import (
    DomainError,
    InternalError,
    SearchExhausted,
    almost_ap_in_spectrum,
    build_ap_witness,
    constant_C,
    crt_check,
    embed_unit_as_matrix,
    find_k_ap,
    find_modulus_with_P,
    fundamental_unit,
    has_3term_ap,
    is_absolutely_primitive,
    is_eps_almost_ap,
    mono_ap,
    occurs_in_ap,
    order_P,
    order_P_bianchi,
    order_P_parabolic,
    prime_tower,
    trace_to_length,
    verify_witness,
    vdw_number,
)


def witness(gamma, k, budget=40):
    """Build a progression witness and return it as a dict."""
    return json.loads(build_ap_witness(list(gamma), k, budget))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
