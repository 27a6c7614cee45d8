#!/usr/bin/env python3
"""
Seed corpus script for the Secure-Domination Digraph Laboratory.

This script writes the example digraph and graph files used in the docs and
in manual CLI sessions: the reference fixture, directed paths and cycles,
spiders, the bi-orientation of K4, and a few small undirected graphs.
"""

import sys
from pathlib import Path
from typing import List

# Add repository root to Python path
sys.path.append(str(Path(__file__).parent.parent))

from src.models.digraph import UndirectedGraph
from src.services.formats import serialize_digraph, serialize_graph
from src.services.generators import dicycle, dipath, reference_fixture, spider, undirected_family


def seed_corpus(out_dir: Path) -> List[Path]:
    """Write every corpus file under out_dir and return the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    written += generate_digraphs(out_dir)
    written += generate_graphs(out_dir)
    return written


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def generate_digraphs(out_dir: Path) -> List[Path]:
    print("  🧭 Generating digraph files...")
    files = [
        _write(out_dir / "fixture.dg", serialize_digraph(reference_fixture(), ["seven-vertex reference fixture"])),
        _write(out_dir / "k4-biorientation.dg",
               serialize_digraph(undirected_family("complete", 4).to_digraph(), ["K4 with both arcs on every edge"])),
    ]
    for n in (4, 6, 10):
        files.append(_write(out_dir / f"p{n}.dg", serialize_digraph(dipath(n), [f"directed path on {n} vertices"])))
    for n in (3, 6, 9):
        files.append(_write(out_dir / f"c{n}.dg", serialize_digraph(dicycle(n), [f"directed cycle on {n} vertices"])))
    for k in (2, 3):
        files.append(_write(out_dir / f"spider{k}.dg", serialize_digraph(spider(k), [f"spider with {k} legs"])))
    return files


def generate_graphs(out_dir: Path) -> List[Path]:
    print("  🔗 Generating undirected graph files...")
    graphs = {
        "p2.g": undirected_family("path", 2),
        "p3.g": undirected_family("path", 3),
        "p4.g": undirected_family("path", 4),
        "triangle.g": undirected_family("cycle", 3),
        "c4.g": undirected_family("cycle", 4),
        "k4.g": undirected_family("complete", 4),
        "star4.g": undirected_family("star", 4),
        "k23.g": UndirectedGraph.from_edges(5, [(u, v) for u in (0, 1) for v in (2, 3, 4)]),
    }
    return [_write(out_dir / name, serialize_graph(graph)) for name, graph in graphs.items()]


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("corpus")
    try:
        print("🌱 Seeding example corpus...")
        paths = seed_corpus(target)
        print(f"✅ Wrote {len(paths)} files to {target}")
    except Exception as e:
        print(f"❌ Failed to seed corpus: {e}")
        sys.exit(1)
