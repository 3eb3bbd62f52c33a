// Copyright 2026 The tpd Authors.
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

#include "tpd/io.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tpd/error.h"

namespace tpd {
namespace {

using nlohmann::json;

class NewickReader {
 public:
  explicit NewickReader(std::string_view text) : text_(text) {}

  TreeSpec Read() {
    SkipSpace();
    ReadSubtree(kNone);
    SkipSpace();
    if (Peek() == ':') {  // a root branch length carries no edge; ignore it
      ++pos_;
      ReadLength();
      SkipSpace();
    }
    Expect(';');
    SkipSpace();
    if (pos_ != text_.size()) Fail(ErrorCode::kParseError, "text after ';'");
    return std::move(spec_);
  }

 private:
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void Fail(ErrorCode code, const std::string& what) const {
    throw ParseError(code, pos_, what);
  }

  void Expect(char c) {
    if (Peek() != c) Fail(ErrorCode::kParseError, std::string("expected '") + c + "'");
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '[') {  // comment
        const size_t close = text_.find(']', pos_);
        if (close == std::string_view::npos) Fail(ErrorCode::kParseError, "unclosed comment");
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  std::string ReadLabel() {
    SkipSpace();
    std::string out;
    if (Peek() == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) Fail(ErrorCode::kParseError, "unclosed quote");
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        out += text_[pos_++];
      }
      return out;
    }
    static constexpr std::string_view kStop = "():;,[]'";
    while (pos_ < text_.size() && kStop.find(text_[pos_]) == std::string_view::npos &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_];
      ++pos_;
    }
    return out;
  }

  int64_t ReadLength() {
    SkipSpace();
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+')) {
      ++pos_;
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    if (token.empty()) {
      pos_ = start;
      Fail(ErrorCode::kParseError, "missing branch length");
    }
    int64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size()) {
      pos_ = start;
      Fail(ErrorCode::kNonIntegerWeight,
           "branch length '" + std::string(token) + "' is not an integer");
    }
    return value;
  }

  void ReadSubtree(int parent) {
    SkipSpace();
    const int self = static_cast<int>(spec_.parent.size());
    spec_.parent.push_back(parent);
    spec_.weight.push_back(0);
    spec_.label.push_back("");
    bool internal = false;
    if (Peek() == '(') {
      internal = true;
      ++pos_;
      while (true) {
        ReadSubtree(self);
        SkipSpace();
        if (Peek() == ',') {
          ++pos_;
          continue;
        }
        Expect(')');
        break;
      }
    }
    const size_t label_at = pos_;
    spec_.label[self] = ReadLabel();
    if (!internal) {
      if (spec_.label[self].empty()) Fail(ErrorCode::kParseError, "leaf without a label");
      if (!leaves_.insert(spec_.label[self]).second) {
        pos_ = label_at;
        Fail(ErrorCode::kDuplicateLeaf, "leaf '" + spec_.label[self] + "' repeated");
      }
    }
    if (parent == kNone) return;
    SkipSpace();
    if (Peek() != ':') Fail(ErrorCode::kParseError, "missing branch length");
    ++pos_;
    spec_.weight[self] = ReadLength();
  }

  std::string_view text_;
  size_t pos_ = 0;
  TreeSpec spec_;
  std::set<std::string> leaves_;
};

std::string QuoteLabel(const std::string& label) {
  static constexpr std::string_view kSpecial = "():;,[]'";
  bool plain = !label.empty();
  for (char c : label) {
    if (kSpecial.find(c) != std::string_view::npos ||
        std::isspace(static_cast<unsigned char>(c))) {
      plain = false;
    }
  }
  if (plain || label.empty()) return label;
  std::string out = "'";
  for (char c : label) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

void WriteSubtree(const PhyloTree& tree, VertexId v, std::string* out) {
  if (!tree.is_leaf(v)) {
    *out += '(';
    bool first = true;
    for (VertexId c : tree.children(v)) {
      if (!first) *out += ',';
      first = false;
      WriteSubtree(tree, c, out);
    }
    *out += ')';
  }
  *out += QuoteLabel(tree.label(v));
  if (v != tree.root()) *out += ':' + std::to_string(tree.weight(v));
}

[[noreturn]] void SchemaFail(const std::string& what) {
  throw Error(ErrorCode::kSchemaError, what);
}

const json& Field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    SchemaFail(std::string("missing field '") + name + "'");
  }
  return obj.at(name);
}

int64_t IntField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_number_integer()) SchemaFail(std::string("field '") + name + "' must be an integer");
  return v.get<int64_t>();
}

std::string StringField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_string()) SchemaFail(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorCode::kParseError, e.byte, "malformed JSON");
  }
}

Mode ModeField(const json& obj) {
  const std::string name = StringField(obj, "mode");
  auto mode = ParseMode(name);
  if (!mode) SchemaFail("unknown mode '" + name + "'");
  return *mode;
}

}  // namespace

PhyloTree ParseNewick(std::string_view text) {
  return PhyloTree::Build(NewickReader(text).Read());
}

std::string ToNewick(const PhyloTree& tree) {
  std::string out;
  WriteSubtree(tree, tree.root(), &out);
  return out + ';';
}

Instance ParseInstanceJson(std::string_view text) {
  const json doc = ParseJson(text);
  if (IntField(doc, "v") != 1) SchemaFail("unsupported version");
  PhyloTree tree = ParseNewick(StringField(doc, "tree"));
  const json& taxa_json = Field(doc, "taxa");
  if (!taxa_json.is_object()) SchemaFail("'taxa' must be an object");
  std::map<std::string, TaxonInfo> taxa;
  for (const auto& [name, entry] : taxa_json.items()) {
    taxa[name] = TaxonInfo{IntField(entry, "ell"), IntField(entry, "ex")};
  }
  const json& teams_json = Field(doc, "teams");
  if (!teams_json.is_array()) SchemaFail("'teams' must be an array");
  std::vector<TeamWindow> teams;
  for (const json& t : teams_json) {
    teams.push_back({IntField(t, "start"), IntField(t, "end")});
  }
  return Instance::Create(std::move(tree), taxa, std::move(teams), IntField(doc, "D"),
                          ModeField(doc));
}

std::string InstanceToJson(const Instance& instance) {
  json doc;
  doc["v"] = 1;
  doc["tree"] = ToNewick(instance.tree());
  json taxa = json::object();
  for (TaxonId x = 0; x < instance.num_taxa(); ++x) {
    taxa[instance.taxon_name(x)] = {{"ell", instance.taxon(x).rescue_length},
                                    {"ex", instance.taxon(x).extinction_time}};
  }
  doc["taxa"] = std::move(taxa);
  json teams = json::array();
  for (const TeamWindow& t : instance.teams()) {
    teams.push_back({{"start", t.start}, {"end", t.end}});
  }
  doc["teams"] = std::move(teams);
  doc["D"] = instance.target_diversity();
  doc["mode"] = std::string(ModeName(instance.mode()));
  return doc.dump(2) + "\n";
}

Schedule ParseScheduleJson(const Instance& instance, std::string_view text) {
  const json doc = ParseJson(text);
  Schedule schedule(ModeField(doc), instance.teams());
  const json& list = Field(doc, "assignments");
  if (!list.is_array()) SchemaFail("'assignments' must be an array");
  auto taxon = [&](const std::string& name) {
    auto x = instance.FindTaxon(name);
    if (!x) throw Error(ErrorCode::kUnknownTaxon, "no taxon named '" + name + "'");
    return *x;
  };
  for (const json& a : list) {
    schedule.Assign(static_cast<int>(IntField(a, "team")), IntField(a, "slot"),
                    taxon(StringField(a, "taxon")));
  }
  const json& saved = Field(doc, "saved");
  if (!saved.is_array()) SchemaFail("'saved' must be an array");
  std::vector<TaxonId> ids;
  for (const json& s : saved) {
    if (!s.is_string()) SchemaFail("'saved' entries must be strings");
    ids.push_back(taxon(s.get<std::string>()));
  }
  schedule.set_saved(TaxaSet(std::move(ids)));
  IntField(doc, "pd");
  return schedule;
}

std::string ScheduleToJson(const Instance& instance, const Schedule& schedule) {
  json doc;
  doc["mode"] = std::string(ModeName(schedule.mode()));
  json list = json::array();
  for (int i = 0; i < schedule.num_teams(); ++i) {
    const TeamWindow& w = schedule.window(i);
    for (int64_t j = w.start + 1; j <= w.end; ++j) {
      const TaxonId x = schedule.at(i, j);
      if (x == kNone) continue;
      list.push_back({{"team", i}, {"slot", j}, {"taxon", instance.taxon_name(x)}});
    }
  }
  doc["assignments"] = std::move(list);
  doc["saved"] = instance.Names(schedule.saved());
  doc["pd"] = PhylogeneticDiversity(instance, schedule.saved());
  return doc.dump(2) + "\n";
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kBadParams, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kBadParams, "cannot write '" + path + "'");
  out << text;
}

}  // namespace tpd
