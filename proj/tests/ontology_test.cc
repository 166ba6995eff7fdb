// Copyright 2026 The OntoForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ontoforge/error.h"
#include "ontoforge/ontology.h"

namespace ontoforge {
namespace {

SemanticRelation IsA(const ConceptId &a, const ConceptId &b, double c = 1.0) {
  return {a, b, RelationType::IsA(), c, {}};
}

TEST_SUITE("ontology") {

TEST_CASE("concept ids are slug plus a SHA-256 prefix of the normalized label") {
  // Prefixes computed with Python's hashlib.
  CHECK(ConceptId::FromNormalizedLabel("semantic network").value == "semantic-network-7233d7fe");
  CHECK(ConceptId::FromNormalizedLabel("ontology").value == "ontology-c205f711");
  CHECK(ConceptId::FromNormalizedLabel("онтологія предметної області").value ==
        "онтологія-предметної-області-ec8225d5");
  CHECK(ConceptId::FromNormalizedLabel("!!").value.rfind("c-", 0) == 0);
}

TEST_CASE("adding A then B yields two distinct deterministic ids") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("A");
  ConceptId b = o.AddConcept("B");
  CHECK(a != b);
  Ontology again = Ontology::Create("t", OntologyKind::kDomain);
  CHECK(again.AddConcept("A") == a);
  CHECK(again.AddConcept("B") == b);
  CHECK(o == again);
}

TEST_CASE("add concept upserts by normalized label") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("Semantic  Network", ConceptKind::kObject, {{"d1", 0, 16}});
  ConceptId b = o.AddConcept("semantic network", ConceptKind::kProcess, {{"d2", 3, 19}});
  CHECK(a == b);
  REQUIRE(o.concepts().size() == 1);
  const Concept &c = o.concepts().at(a);
  CHECK(c.label == "Semantic  Network");
  CHECK(c.normalized_label == "semantic network");
  CHECK(c.provenance.size() == 2);
  CHECK_THROWS_AS(o.AddConcept("   "), Error);
}

TEST_CASE("relations need known endpoints and a confidence in [0,1]") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("a");
  ConceptId b = o.AddConcept("b");
  try {
    o.AddRelation(IsA(a, ConceptId{"ghost-00000000"}));
    FAIL("expected unknown-concept");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kUnknownConcept);
  }
  CHECK_THROWS_AS(o.AddRelation(IsA(a, b, 1.5)), Error);
  CHECK_THROWS_AS(o.AddRelation(IsA(a, a)), Error);
  // A non-hierarchical self-link is allowed.
  o.AddRelation({a, a, RelationType::AssociatedWith(), 0.5, {}});
  CHECK(o.relations().size() == 1);
}

TEST_CASE("duplicate relations keep the higher confidence and union evidence") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("a");
  ConceptId b = o.AddConcept("b");
  o.AddRelation({a, b, RelationType::IsA(), 0.7, {{"", -1, "nesting"}}});
  o.AddRelation({a, b, RelationType::IsA(), 0.9, {{"d1", 2, "pattern:such_as"}}});
  o.AddRelation({a, b, RelationType::IsA(), 0.1, {{"", -1, "nesting"}}});
  REQUIRE(o.relations().size() == 1);
  const SemanticRelation &r = o.relations().begin()->second;
  CHECK(r.confidence == 0.9);
  CHECK(r.evidence.size() == 2);
}

TEST_CASE("cycle rejection reports the closing path") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("a");
  ConceptId b = o.AddConcept("b");
  ConceptId c = o.AddConcept("c");
  o.AddRelation(IsA(a, b));
  try {
    o.AddRelation(IsA(b, a));
    FAIL("expected a cycle error");
  } catch (const CycleError &e) {
    CHECK(e.code() == ErrorCode::kCycleViolation);
    CHECK(e.path() == std::vector<std::string>{b.value, a.value});
  }
  o.AddRelation(IsA(b, c));
  try {
    o.AddRelation(IsA(c, a));
    FAIL("expected a cycle error");
  } catch (const CycleError &e) {
    CHECK(e.path() == std::vector<std::string>{c.value, a.value, b.value});
  }
  // part_of is tracked separately from is_a.
  o.AddRelation({c, a, RelationType::PartOf(), 1.0, {}});
  CHECK(o.relations().size() == 3);
}

TEST_CASE("a rejected edge leaves the ontology unchanged") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("a");
  ConceptId b = o.AddConcept("b");
  o.AddRelation(IsA(a, b));
  Ontology before = o;
  CHECK_THROWS(o.AddRelation(IsA(b, a)));
  CHECK(o == before);
}

TEST_CASE("a 3-cycle loses exactly one edge under every insertion order") {
  // Brute force over all 6 orders of A->B, B->C, C->A.
  Ontology base = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = base.AddConcept("a");
  ConceptId b = base.AddConcept("b");
  ConceptId c = base.AddConcept("c");
  std::vector<SemanticRelation> edges{IsA(a, b), IsA(b, c), IsA(c, a)};
  std::vector<int> order{0, 1, 2};
  int orders = 0;
  do {
    Ontology o = base;
    int rejected = 0;
    for (int i : order) {
      try {
        o.AddRelation(edges[i]);
      } catch (const CycleError &) {
        ++rejected;
      }
    }
    CHECK(rejected == 1);
    CHECK(o.relations().size() == 2);
    // The edge inserted last is the one rejected.
    CHECK_FALSE(o.relations().count(edges[order.back()].key()));
    CHECK(o.Validate().ok());
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(orders == 6);
}

TEST_CASE("validate is empty and stable on random acyclic ontologies") {
  std::mt19937 rng(7);
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  std::vector<ConceptId> ids;
  for (int i = 0; i < 10; ++i) ids.push_back(o.AddConcept("n" + std::to_string(i)));
  int added = 0;
  while (added < 10) {
    size_t x = rng() % 10, y = rng() % 10;
    if (x >= y) continue;  // edges from lower to higher index cannot cycle
    size_t before = o.relations().size();
    o.AddRelation(IsA(ids[x], ids[y]));
    if (o.relations().size() > before) ++added;
  }
  ValidationReport r1 = o.Validate();
  ValidationReport r2 = o.Validate();
  CHECK(r1.ok());
  CHECK(r1.violations == r2.violations);
}

TEST_CASE("interpretations") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("a");
  ConceptId b = o.AddConcept("b");
  o.AddInterpretation({SubjectKind::kConcept, a.value, "first letter", "dict1"});
  o.AddInterpretation({SubjectKind::kConcept, a.value, "first letter", "dict2"});
  CHECK(o.interpretations().size() == 1);
  o.AddInterpretation({SubjectKind::kConcept, a.value, "alpha", "dict2"});
  CHECK(o.interpretations().size() == 2);
  CHECK_THROWS_AS(o.AddInterpretation({SubjectKind::kConcept, a.value, "", "d"}), Error);
  CHECK_THROWS_AS(o.AddInterpretation({SubjectKind::kConcept, "nope-00000000", "g", "d"}),
                  Error);
  // A relation type must be in use before it can be glossed.
  CHECK_THROWS_AS(o.AddInterpretation({SubjectKind::kRelationType, "is_a", "subsumption", "d"}),
                  Error);
  o.AddRelation(IsA(a, b));
  o.AddInterpretation({SubjectKind::kRelationType, "is_a", "subsumption", "d"});
  CHECK(o.interpretations().size() == 3);
}

TEST_CASE("disjointness is checked over is_a ancestors") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId animal = o.AddConcept("animal");
  ConceptId plant = o.AddConcept("plant");
  ConceptId dog = o.AddConcept("dog");
  ConceptId puppy = o.AddConcept("puppy");
  o.AddAxiom({"animal-plant", AxiomForm::kConstraint, DisjointAxiom{{animal, plant}}, std::nullopt});
  o.AddRelation(IsA(dog, animal));
  o.AddRelation(IsA(puppy, dog));
  CHECK(o.Validate().ok());
  o.AddRelation(IsA(puppy, plant));
  ValidationReport r = o.Validate();
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].axiom_id == "animal-plant");
  CHECK(r.violations[0].elements.front() == puppy.value);
}

TEST_CASE("domain/range axioms respect scope") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId p = o.AddConcept("parsing", ConceptKind::kProcess);
  ConceptId q = o.AddConcept("parser", ConceptKind::kObject);
  o.AddRelation({p, q, RelationType::FromTag("performed_by"), 0.5, {}});
  o.AddAxiom({"performed-by", AxiomForm::kDefinition,
              DomainRangeAxiom{RelationType::FromTag("performed_by"), ConceptKind::kObject,
                               ConceptKind::kObject},
              std::nullopt});
  CHECK(o.Validate().violations.size() == 1);
  Axiom scoped{"performed-by", AxiomForm::kDefinition,
               DomainRangeAxiom{RelationType::FromTag("performed_by"), ConceptKind::kObject,
                                ConceptKind::kObject},
               std::set<ConceptId>{q}};
  o.AddAxiom(scoped);
  CHECK(o.Validate().ok());
}

TEST_CASE("relation type tags are restricted") {
  CHECK(RelationType::FromTag("has_part").tag() == "has_part");
  CHECK_THROWS_AS(RelationType::FromTag("Has Part"), Error);
  CHECK_THROWS_AS(RelationType::FromTag(""), Error);
  CHECK(RelationType().tag() == "associated_with");
}

TEST_CASE("from parts rejects structural violations") {
  Concept a{ConceptId::FromNormalizedLabel("a"), "a", "a", ConceptKind::kObject, {}};
  Concept b{ConceptId::FromNormalizedLabel("b"), "b", "b", ConceptKind::kObject, {}};
  std::vector<SemanticRelation> cycle{IsA(a.id, b.id), IsA(b.id, a.id)};
  try {
    Ontology::FromParts("t", OntologyKind::kDomain, {}, {a, b}, cycle, {}, DefaultAxioms());
    FAIL("expected validation-error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kValidationError);
  }
  Concept forged = a;
  forged.id = ConceptId{"a-ffffffff"};
  CHECK_THROWS_AS(Ontology::FromParts("t", OntologyKind::kDomain, {}, {forged}, {}, {}, {}),
                  Error);
  Ontology ok = Ontology::FromParts("t", OntologyKind::kDomain, {}, {a, b}, {IsA(a.id, b.id)},
                                    {}, DefaultAxioms());
  CHECK(ok.Validate().ok());
  CHECK(ok.axioms().size() == 3);
}

TEST_CASE("find path follows one relation type") {
  Ontology o = Ontology::Create("t", OntologyKind::kDomain);
  ConceptId a = o.AddConcept("a"), b = o.AddConcept("b"), c = o.AddConcept("c");
  o.AddRelation(IsA(a, b));
  o.AddRelation({b, c, RelationType::PartOf(), 1, {}});
  CHECK(o.FindPath(a, b, RelationType::IsA()) == std::vector<ConceptId>{a, b});
  CHECK(o.FindPath(a, c, RelationType::IsA()).empty());
}

}  // TEST_SUITE
}  // namespace
}  // namespace ontoforge
