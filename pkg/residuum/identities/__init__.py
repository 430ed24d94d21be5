from .catalog import CATALOG, CATALOG_VERSION, CatalogEntry, catalog_entry
from .classify import classify_analyticity
from .keyhole import check_keyhole_log_example, check_unit_circle_log
from .lemmas import check_lemma_large_circle, check_lemma_small_circle, check_lemma_vt_sector, sample_sector_limit
from .planar import check_boundary_singularity_identity, check_planar_residue_identity
from .suite import CHECKS, SUITES, NamedCheck, run_checks, run_suite, select_checks
from .vector_field import check_vector_field_residues

__all__ = [
    "CATALOG",
    "CATALOG_VERSION",
    "CHECKS",
    "CatalogEntry",
    "NamedCheck",
    "SUITES",
    "catalog_entry",
    "check_boundary_singularity_identity",
    "check_keyhole_log_example",
    "check_lemma_large_circle",
    "check_lemma_small_circle",
    "check_lemma_vt_sector",
    "check_planar_residue_identity",
    "check_unit_circle_log",
    "check_vector_field_residues",
    "classify_analyticity",
    "run_checks",
    "run_suite",
    "sample_sector_limit",
    "select_checks",
]
