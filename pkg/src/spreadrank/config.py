"""Run configuration shared by simulation, measures, and evaluation."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ValidationError
from .graph import Network

DEFAULT_MEASURES = (
    "c_od", "c_os", "c_b_uu", "c_b_uw", "c_c_du", "c_c_dw", "c_c_dw_mod",
    "c_e_uu", "c_katz_du", "c_katz_dw_out", "wks", "gc", "gc_w",
    "sc1", "sk1", "sk2", "sk3",
    "mgc_ods", "mgc_s", "mgc_sc", "mgc_sk", "mgc_wk",
)


@dataclass(frozen=True)
class RunConfig:
    """All tunable parameters of a pipeline run.

    ``katz_alpha`` of ``None`` selects the spectral default
    ``0.85 / lambda_max`` per adjacency operator; a float fixes it.
    """

    runs: int = 20000
    master_seed: int = 1
    top_k: int = 50
    katz_alpha: float | None = None
    closeness_threshold: float = 0.04
    gravity_radius: int = 3
    eps_guard: float = 1e-12
    sc1_gamma: float = 0.64
    sc1_delta: float = 0.36
    measures: tuple[str, ...] = DEFAULT_MEASURES
    parallel_width: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValidationError("runs must be >= 1")
        if self.top_k < 1:
            raise ValidationError("top_k must be >= 1")
        if self.gravity_radius < 1:
            raise ValidationError("gravity radius must be >= 1")
        if self.eps_guard <= 0:
            raise ValidationError("eps_guard must be > 0")
        if self.parallel_width < 1:
            raise ValidationError("parallel_width must be >= 1")

    def to_json(self) -> str:
        payload = asdict(self)
        payload["measures"] = list(self.measures)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        payload = json.loads(text)
        payload["measures"] = tuple(payload.get("measures", DEFAULT_MEASURES))
        return cls(**payload)


def graph_fingerprint(net: Network) -> str:
    """Content hash of the edge set (ids, order, weights) and direction flag."""
    digest = hashlib.sha256()
    digest.update(f"n={net.node_count};directed={net.directed};".encode())
    digest.update(np.ascontiguousarray(net.src).tobytes())
    digest.update(np.ascontiguousarray(net.dst).tobytes())
    digest.update(np.ascontiguousarray(net.weight).tobytes())
    return digest.hexdigest()[:16]


def simulation_hash(net: Network, runs: int, master_seed: int) -> str:
    """Cache key for spread results: graph content plus the two knobs that matter."""
    digest = hashlib.sha256()
    digest.update(graph_fingerprint(net).encode())
    digest.update(f";runs={runs};master_seed={master_seed}".encode())
    return digest.hexdigest()[:16]
