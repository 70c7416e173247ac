from quality.alpha import triangle_alpha, triangle_is_degenerate
from quality.audit import HISTOGRAM_BINS, QualityAudit, audit_mesh
from quality.field import (
    QualityField,
    compute_all_qualities,
    min_incident_quality,
    reduce_min_quality,
    refresh_fused,
    update_fused,
    update_two_phase,
)
