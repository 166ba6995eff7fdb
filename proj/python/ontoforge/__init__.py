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

"""Python interface to the OntoForge ontology learning pipeline."""

from ontoforge._ontoforge import (  # noqa: F401
    Ontology,
    OntoForgeError,
    concept_id,
    create_project,
    export,
    extract_candidates,
    final_ontology,
    ingest,
    iterate,
    merge,
    normalize,
    parse_ontology,
    run,
)
