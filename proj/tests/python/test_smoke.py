# Copyright 2026 The OntoForge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import pathlib

import pytest
import rdflib

import ontoforge


def test_normalize_and_ids():
    assert ontoforge.normalize("  Semantic   NETWORKS ") == "semantic networks"
    a = ontoforge.concept_id("Semantic Network")
    assert a == ontoforge.concept_id("semantic  network")
    assert a.startswith("semantic-network-")


def test_ontology_round_trip():
    o = ontoforge.Ontology("smoke")
    animal = o.add_concept("animal")
    dog = o.add_concept("dog")
    o.add_relation(dog, animal, "is_a", 0.8)
    o.add_interpretation(dog, 'a "loyal" <pet> & friend')
    assert o.validate() == []
    text = o.serialize()
    back = ontoforge.parse_ontology(text)
    assert back == o
    assert back.serialize() == text


def test_cycle_is_rejected():
    o = ontoforge.Ontology("cyc")
    a, b = o.add_concept("a"), o.add_concept("b")
    o.add_relation(a, b)
    with pytest.raises(ontoforge.OntoForgeError, match="cycle"):
        o.add_relation(b, a)


def test_merge_size_law():
    left = ontoforge.Ontology("l")
    right = ontoforge.Ontology("r")
    for label in ("animal", "dog"):
        left.add_concept(label)
    for label in ("dog", "cat"):
        right.add_concept(label)
    merged, diagnostics = ontoforge.merge(left, right)
    assert len(merged.concepts()) == 3
    assert merged.name == "l+r"
    assert diagnostics == []


def test_candidates():
    rows = ontoforge.extract_candidates(["Semantic networks. Semantic networks."], 2)
    keys = {r["key"]: r for r in rows}
    assert keys["semant network"]["freq"] == 2


def test_pipeline_and_turtle(tmp_path):
    demo = pathlib.Path(os.environ.get("ONTOFORGE_DEMO", ""))
    if not demo.is_dir():
        pytest.skip("ONTOFORGE_DEMO not set")
    project = tmp_path / "demo"
    ontoforge.create_project(project)
    files = sorted(str(p) for p in demo.iterdir() if p.is_file())
    added, duplicates = ontoforge.ingest(project, files)
    assert added > 0 and duplicates == 0
    assert ontoforge.run(project) == 0
    final = ontoforge.final_ontology(project)
    assert len(final.concepts()) > 0

    graph = rdflib.Graph()
    graph.parse(data=final.to_turtle(), format="turtle")
    expected = len(final.concepts()) + len(final.relations()) + final.interpretation_count()
    assert len(graph) == expected

    first = final.concepts()[0]
    iteration, warnings = ontoforge.iterate(
        project, [{"verdict": "reject", "term": first["normalized_label"]}])
    assert iteration == 1 and warnings == []
    after = ontoforge.final_ontology(project)
    assert first["id"] not in {c["id"] for c in after.concepts()}
