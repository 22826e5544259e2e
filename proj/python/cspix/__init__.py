"""Value interchangeability and substitutability analysis for extensional CSPs."""

from ._cspix import (
    CspError,
    Instance,
    coni,
    consub,
    ctxdepi,
    dyn_ni,
    fdyni,
    fdynsub,
    fi,
    gallery_ids,
    gallery_instance,
    generate,
    gnsub_pairs,
    ki,
    lattice_dot,
    lattice_text,
    microstructure_dot,
    ni_classes,
    nic_classes,
    npi_classes,
    ns_closure,
    nsub_pairs,
    nti_pairs,
    pi,
    solutions,
    solve,
    spri,
    sub,
    verify_gallery,
    verify_random,
)

__all__ = [
    "CspError",
    "Instance",
    "coni",
    "consub",
    "ctxdepi",
    "dyn_ni",
    "fdyni",
    "fdynsub",
    "fi",
    "gallery_ids",
    "gallery_instance",
    "generate",
    "gnsub_pairs",
    "ki",
    "lattice_dot",
    "lattice_text",
    "microstructure_dot",
    "ni_classes",
    "nic_classes",
    "npi_classes",
    "ns_closure",
    "nsub_pairs",
    "nti_pairs",
    "pi",
    "solutions",
    "solve",
    "spri",
    "sub",
    "verify_gallery",
    "verify_random",
]
