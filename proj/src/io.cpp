#include "folspace/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "folspace/errors.hpp"

namespace folspace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vocabulary load_vocabulary(const std::string& path) {
  Json j = Json::parse(read_file(path));
  std::vector<Predicate> preds;
  for (const auto& p : j.at("predicates"))
    preds.push_back({p.at("name").get<std::string>(), p.at("arity").get<int>()});
  return Vocabulary(std::move(preds));
}

Json vocabulary_to_json(const Vocabulary& v) {
  Json preds = Json::array();
  for (const auto& p : v.predicates()) preds.push_back({{"name", p.name}, {"arity", p.arity}});
  return Json{{"predicates", preds}};
}

FiniteModel load_model(const std::string& path, const Vocabulary& vocab) {
  Json j = Json::parse(read_file(path));
  FiniteModel m;
  m.vocab = vocab;
  std::map<std::string, int> elem;
  for (const auto& e : j.at("domain")) {
    std::string name = e.get<std::string>();
    if (elem.count(name)) throw error("duplicate domain element " + name + " in " + path);
    elem[name] = static_cast<int>(m.domain.size());
    m.domain.push_back(name);
  }
  if (m.domain.empty()) throw error("empty domain in " + path);
  m.tables.resize(vocab.size());
  if (j.count("tables")) {
    for (const auto& [pred_name, tuples] : j.at("tables").items()) {
      auto p = vocab.index_of(pred_name);
      if (!p) throw vocabulary_mismatch("unknown predicate " + pred_name + " in " + path);
      for (const auto& tuple : tuples) {
        std::vector<int> t;
        for (const auto& e : tuple) {
          auto it = elem.find(e.get<std::string>());
          if (it == elem.end()) throw error("unknown element in tuple in " + path);
          t.push_back(it->second);
        }
        if (static_cast<int>(t.size()) != vocab.arity(*p))
          throw vocabulary_mismatch("tuple arity for " + pred_name + " in " + path);
        m.tables[*p].insert(t);
      }
    }
  }
  return m;
}

Json model_to_json(const FiniteModel& m) {
  Json domain = Json::array();
  for (const auto& e : m.domain) domain.push_back(e);
  Json tables = Json::object();
  for (size_t p = 0; p < m.vocab.size(); ++p) {
    Json tuples = Json::array();
    for (const auto& t : m.tables[p]) {
      Json tuple = Json::array();
      for (int e : t) tuple.push_back(m.domain[e]);
      tuples.push_back(tuple);
    }
    tables[m.vocab.name(static_cast<int>(p))] = tuples;
  }
  return Json{{"domain", domain}, {"tables", tables}};
}

std::vector<FiniteModel> load_model_dir(const std::string& dir, const Vocabulary& vocab) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<FiniteModel> models;
  for (const auto& p : paths) models.push_back(load_model(p, vocab));
  return models;
}

KnowledgeSpec load_knowledge_spec(const std::string& path) {
  Json j = Json::parse(read_file(path));
  KnowledgeSpec spec;
  if (j.count("false"))
    for (const auto& s : j.at("false")) spec.false_sentences.push_back(s.get<std::string>());
  if (j.count("conjectures"))
    for (const auto& s : j.at("conjectures")) spec.conjectures.push_back(s.get<std::string>());
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  if (j.count("models"))
    for (const auto& s : j.at("models"))
      spec.model_paths.push_back((base / s.get<std::string>()).string());
  if (j.count("alpha")) spec.alpha = BigRat::parse(j.at("alpha").get<std::string>());
  return spec;
}

std::vector<std::string> load_sentence_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    size_t end = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(start, end - start + 1));
  }
  return out;
}

namespace {
Json kind_to_json(const Universe& u, const KindPtr& k) {
  Json base = Json::object();
  const auto& batoms = u.base_atoms(k->ctx_len);
  for (size_t i = 0; i < batoms.size(); ++i) {
    std::string name = u.vocab().name(batoms[i].pred) + "(";
    for (size_t a = 0; a < batoms[i].args.size(); ++a) {
      if (a) name += ",";
      name += "x" + std::to_string(batoms[i].args[a] + 1);
    }
    name += ")";
    base[name] = static_cast<bool>(k->base[i]);
  }
  Json out{{"rank", k->rank}, {"context", k->ctx_len}, {"base", base}};
  if (k->rank > 0) {
    Json layer = Json::object();
    bool dense_addressable = true;
    std::string bits;
    try {
      const auto& table = u.gamma_table(k->rank - 1, k->ctx_len + 1);
      std::vector<bool> signs(table.size(), false);
      for (const auto& p : k->positives) {
        auto idx = u.find_kind_index(p);
        if (!idx) {
          dense_addressable = false;
          break;
        }
        signs[*idx] = true;
      }
      if (dense_addressable) bits = signs_to_bitstring(signs);
    } catch (const budget_exceeded&) {
      dense_addressable = false;
    }
    if (dense_addressable && k->dense) {
      layer["repr"] = "dense";
      layer["signs"] = bits;
    } else {
      layer["repr"] = "positives";
      Json pos = Json::array();
      for (const auto& p : k->positives) pos.push_back(kind_to_json(u, p));
      layer["positives"] = pos;
      if (dense_addressable) layer["signs"] = bits;
    }
    out["layer"] = layer;
  }
  return out;
}
}  // namespace

Json constituent_to_json(const Universe& u, const Constituent& d) {
  Json out = Json::object();
  if (d.ctx_len() == 0 && d.rank() >= 1) {
    try {
      auto idx = u.find_constituent_index(d);
      if (idx) out["id"] = u.constituent_id(d.rank(), *idx);
    } catch (const budget_exceeded&) {
    }
  }
  if (d.ctx_len() > 0) {
    Json head = Json::object();
    const auto& hatoms = u.atoms(d.ctx_len() - 1);
    for (size_t i = 0; i < hatoms.size(); ++i) {
      std::string name = u.vocab().name(hatoms[i].pred) + "(";
      for (size_t a = 0; a < hatoms[i].args.size(); ++a) {
        if (a) name += ",";
        name += "x" + std::to_string(hatoms[i].args[a] + 1);
      }
      name += ")";
      head[name] = static_cast<bool>(d.head[i]);
    }
    out["head"] = head;
  }
  out["constituent"] = kind_to_json(u, d.attr);
  out["formula"] = print_formula(u.to_formula(d), u.vocab());
  return out;
}

Json constituent_set_to_json(const Universe& u, const ConstituentSet& s) {
  Json members = Json::array();
  for (uint32_t idx : s.members) members.push_back(u.constituent_id(s.rank, idx));
  return Json{{"rank", s.rank}, {"count", s.members.size()}, {"members", members}};
}

Json vector_to_json(const SparseVector& v) {
  Json entries = Json::array();
  for (const auto& [idx, c] : v.entries()) {
    entries.push_back(Json::array({v.universe()->constituent_id(v.rank(), idx),
                                   c.num().to_string(), c.den().to_string()}));
  }
  return Json{{"rank", v.rank()}, {"entries", entries}};
}

Json tree_to_json(const RefinementTree& t, const TreeMeasure* measure) {
  Json nodes = Json::array();
  for (int r = 0; r <= t.max_rank; ++r) {
    for (uint32_t i = 0; i < t.level_size(r); ++i) {
      Json node{{"id", t.uni->constituent_id(r, i)},
                {"rank", r},
                {"parent", r == 0 ? Json(nullptr) : Json(t.uni->constituent_id(r - 1, t.parent[r][i]))}};
      if (measure) {
        node["measure"] = measure->at(r, i).to_string();
        node["literal_uniform"] = literal_uniform_value(*t.uni, r).to_string();
      }
      nodes.push_back(node);
    }
  }
  return Json{{"max_rank", t.max_rank}, {"nodes", nodes}};
}

}  // namespace folspace
