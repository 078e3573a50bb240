#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "folspace/constituents.hpp"
#include "folspace/model.hpp"
#include "folspace/rational.hpp"
#include "folspace/reftree.hpp"
#include "folspace/vectorspace.hpp"

namespace folspace {

using Json = nlohmann::ordered_json;

// {"predicates": [{"name": "P", "arity": 1}]}
Vocabulary load_vocabulary(const std::string& path);
Json vocabulary_to_json(const Vocabulary& v);

// {"domain": ["a","b"], "tables": {"P": [["a"]]}}
FiniteModel load_model(const std::string& path, const Vocabulary& vocab);
Json model_to_json(const FiniteModel& m);

// All *.json files of a directory, sorted by name.
std::vector<FiniteModel> load_model_dir(const std::string& dir, const Vocabulary& vocab);

// {"false": [...], "conjectures": [...], "models": [paths], "alpha": "1/1"}
struct KnowledgeSpec {
  std::vector<std::string> false_sentences;
  std::vector<std::string> conjectures;
  std::vector<std::string> model_paths;  // resolved relative to the spec file
  BigRat alpha = BigRat(1);
};
KnowledgeSpec load_knowledge_spec(const std::string& path);

// One sentence per nonempty, non-comment line.
std::vector<std::string> load_sentence_lines(const std::string& path);

Json constituent_to_json(const Universe& u, const Constituent& d);
Json constituent_set_to_json(const Universe& u, const ConstituentSet& s);
Json vector_to_json(const SparseVector& v);
Json tree_to_json(const RefinementTree& t, const TreeMeasure* measure);

std::string read_file(const std::string& path);

}  // namespace folspace
