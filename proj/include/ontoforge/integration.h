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

// Aligning two ontologies by concept label similarity and merging them.

#ifndef ONTOFORGE_INTEGRATION_H_
#define ONTOFORGE_INTEGRATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/linguistic.h"
#include "ontoforge/ontology.h"

namespace ontoforge {

// Ordered by preference when similarities tie.
enum class AlignMethod { kExact, kNormalized, kTokenOverlap };

std::string_view AlignMethodName(AlignMethod method);

struct AlignedPair {
  ConceptId left;   // in the first ontology
  ConceptId right;  // in the second ontology
  double similarity = 0;
  AlignMethod method = AlignMethod::kExact;
  bool operator==(const AlignedPair &) const = default;
};

struct AlignmentMap {
  std::vector<AlignedPair> pairs;
  // Swaps the roles of the two ontologies.
  AlignmentMap Inverse() const;
  bool operator==(const AlignmentMap &) const = default;
};

// Identical labels score 1.0 (exact), identical normalized labels 1.0
// (normalized), otherwise the Jaccard index of the stemmed label token sets.
// Greedy one-to-one matching by similarity descending; ties prefer the
// stronger method, then lexicographic ids. Throws invalid-argument unless
// threshold is in (0, 1].
AlignmentMap Align(const Ontology &left, const Ontology &right, double threshold,
                   const ProfileSet &profiles);

// Label similarity as used by Align.
double LabelSimilarity(const Concept &a, const Concept &b,
                       const ProfileSet &profiles, AlignMethod *method = nullptr);

struct MergeResult {
  Ontology ontology;
  std::vector<std::string> diagnostics;
};

// Aligned pairs collapse into the left concept (its label and kind win,
// provenance and interpretations are unioned); other concepts are copied.
// Relations are re-pointed, deduplicated by max confidence and inserted in
// BuildOntology order; edges closing a cycle are dropped with a diagnostic.
// Throws invalid-argument if the alignment names concepts that are absent or
// is not one-to-one.
MergeResult Merge(const Ontology &left, const Ontology &right,
                  const AlignmentMap &alignment);

// Graph isomorphism by normalized label: same labels, kinds, relation
// triples (over labels) and interpretations.
bool IsomorphicByLabel(const Ontology &a, const Ontology &b);

}  // namespace ontoforge

#endif  // ONTOFORGE_INTEGRATION_H_
