"""atomech - Governance

Verification gate, run manifests and the reference audit.
"""

from atomech.governance.audit import (
    AuditReport,
    ReferenceDataset,
    load_reference_dataset,
    run_reference_audit,
)
from atomech.governance.gate import Check, GateDecision, GateResult, VerificationGate
from atomech.governance.repro import RunManifest, build_manifest

__all__ = [
    "AuditReport",
    "Check",
    "GateDecision",
    "GateResult",
    "ReferenceDataset",
    "RunManifest",
    "VerificationGate",
    "build_manifest",
    "load_reference_dataset",
    "run_reference_audit",
]
