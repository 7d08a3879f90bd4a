#!/usr/bin/env python3
"""Generate the bundled synthetic social-network samples under data/.

Deterministic: rerunning reproduces the committed files byte for byte.
The graphs mimic small friendship/forum networks: heavy-tailed popularity,
some reciprocity, one undirected set to exercise edge orientation.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def social_digraph(rng: np.random.Generator, n: int, mean_out: float,
                   reciprocity: float) -> list[tuple[int, int]]:
    edges: set[tuple[int, int]] = set()
    in_deg = np.ones(n)
    for u in range(n):
        k = min(n - 1, max(1, int(rng.poisson(mean_out))))
        weights = in_deg.copy()
        weights[u] = 0.0
        probs = weights / weights.sum()
        targets = rng.choice(n, size=k, replace=False, p=probs)
        for t in targets:
            t = int(t)
            edges.add((u, t))
            in_deg[t] += 1
            if rng.random() < reciprocity:
                edges.add((t, u))
                in_deg[u] += 1
    return sorted(edges)


def write_edges(path: Path, edges, weighted_by: dict | None = None,
                header: str = "") -> None:
    lines = [f"# {header}"] if header else []
    for u, v in edges:
        if weighted_by is not None:
            lines.append(f"{u + 1} {v + 1} {weighted_by[(u, v)]}")
        else:
            lines.append(f"{u + 1} {v + 1}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    DATA_DIR.mkdir(exist_ok=True)
    rng = np.random.default_rng(20240901)

    club = social_digraph(rng, 40, 9.0, 0.45)
    write_edges(DATA_DIR / "synth_club.tsv", club,
                header="synthetic club network, directed, unweighted")

    forum = social_digraph(rng, 70, 6.0, 0.3)
    ratings = {e: int(rng.integers(1, 6)) for e in forum}
    write_edges(DATA_DIR / "synth_forum.tsv", forum, weighted_by=ratings,
                header="synthetic forum network, directed, rating weights 1-5")

    campus_rng = np.random.default_rng(20240902)
    campus_dir = social_digraph(campus_rng, 80, 5.0, 0.0)
    campus = sorted({(min(u, v), max(u, v)) for u, v in campus_dir})
    # shuffle endpoint order so ingestion has to orient the edges
    campus_lines = []
    for u, v in campus:
        if campus_rng.random() < 0.5:
            u, v = v, u
        campus_lines.append((u, v))
    write_edges(DATA_DIR / "synth_campus.tsv", campus_lines,
                header="synthetic campus network, undirected, unweighted")

    collab = social_digraph(rng, 60, 4.0, 0.2)
    write_edges(DATA_DIR / "synth_collab.tsv", collab,
                header="synthetic collaboration network, directed, unweighted")

    manifest = {
        "datasets": [
            {"name": "synth_club", "file": "synth_club.tsv",
             "directed": True, "weighted": False, "synthetic": True},
            {"name": "synth_forum", "file": "synth_forum.tsv",
             "directed": True, "weighted": True, "synthetic": True},
            {"name": "synth_campus", "file": "synth_campus.tsv",
             "directed": False, "weighted": False, "synthetic": True},
            {"name": "synth_collab", "file": "synth_collab.tsv",
             "directed": True, "weighted": False, "synthetic": True},
            {"name": "moreno_seventh", "file": "moreno_seventh.tsv",
             "directed": True, "weighted": True, "synthetic": False,
             "expected_nodes": 29, "expected_edges": 376},
            {"name": "moreno_dutch_college", "file": "moreno_dutch_college.tsv",
             "directed": True, "weighted": True, "synthetic": False,
             "expected_nodes": 32, "expected_edges": 710},
            {"name": "moreno_highschool", "file": "moreno_highschool.tsv",
             "directed": True, "weighted": True, "synthetic": False,
             "expected_nodes": 70, "expected_edges": 366},
            {"name": "moreno_residence_hall", "file": "moreno_residence_hall.tsv",
             "directed": True, "weighted": True, "synthetic": False,
             "expected_nodes": 217, "expected_edges": 2672},
            {"name": "moreno_physicians", "file": "moreno_physicians.tsv",
             "directed": True, "weighted": False, "synthetic": False,
             "expected_nodes": 241, "expected_edges": 1098},
        ]
    }
    (DATA_DIR / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                            encoding="utf-8")
    for entry in manifest["datasets"]:
        status = "ok" if (DATA_DIR / entry["file"]).exists() else "missing"
        print(f"{entry['name']:24s} {status}")


if __name__ == "__main__":
    main()
