// Copyright 2026 The ontoseed Authors.
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

// Text renderings of pipeline artifacts: DOT, GraphML, TSV and JSON Lines.

#ifndef ONTOSEED_EXPORT_HPP_
#define ONTOSEED_EXPORT_HPP_

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "ontoseed/ecu.hpp"
#include "ontoseed/harvest.hpp"
#include "ontoseed/store.hpp"
#include "ontoseed/trim.hpp"
#include "ontoseed/upper_graph.hpp"

namespace ontoseed {

// Integrated graph with support counts and CU/ECU flags on every node.
std::string integrated_dot(const IntegratedGraph& graph, const CuSet& cu, const CommonPathSet& common,
                           std::span<const EcuRecord> ecu, const HierStore& store);
std::string integrated_graphml(const IntegratedGraph& graph, const CuSet& cu, const CommonPathSet& common,
                               std::span<const EcuRecord> ecu, const HierStore& store);
// child, parent, predicate, relation, support, supporting seeds
std::string integrated_tsv(const IntegratedGraph& graph, const HierStore& store);

// Residual graph, nodes tagged with their component id.
std::string residual_dot(const PartitionedGraph& part, std::span<const EcuRecord> ecu, const HierStore& store);
std::string residual_graphml(const PartitionedGraph& part, std::span<const EcuRecord> ecu,
                             const HierStore& store);

// entity IRI, label, component id, N, nes
std::string ecu_tsv(std::span<const EcuRecord> ecu, const HierStore& store);

// {iri, labels, provenance[{ecu, depth, subtreeRoot}]} per line.
std::string candidates_jsonl(std::span<const ConceptCandidate> candidates, const HierStore& store);
// Same schema plus keptBy.
std::string trimmed_jsonl(std::span<const TrimmedCandidate> candidates, const HierStore& store);
// iri, label, ecu, depth, subtreeRoot; one row per provenance entry.
std::string candidates_tsv(std::span<const ConceptCandidate> candidates, const HierStore& store);

// Reads either JSON Lines flavour back. Throws std::runtime_error naming the
// line on malformed input or IRIs unknown to the store.
std::vector<ConceptCandidate> read_candidates_jsonl(std::istream& in, const HierStore& store);

}  // namespace ontoseed

#endif  // ONTOSEED_EXPORT_HPP_
