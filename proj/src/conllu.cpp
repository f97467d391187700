#include "monolog/conllu.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "monolog/errors.hpp"

namespace monolog {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
    if (v > 1000000) return false;
  }
  out = v;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Every head chain must end at 0 within n steps.
void check_acyclic(const Sentence& s, std::size_t block_line) {
  const int n = static_cast<int>(s.tokens.size());
  for (const auto& t : s.tokens) {
    int cur = t.id;
    int steps = 0;
    while (cur != 0) {
      cur = s.tokens[cur - 1].head;
      if (++steps > n) {
        throw StructuralError("cyclic head chain at token " + std::to_string(t.id) +
                              " in sentence starting at line " + std::to_string(block_line));
      }
    }
  }
}

void finish_sentence(Sentence& s, std::size_t block_line, std::vector<Sentence>& out) {
  if (s.tokens.empty()) {
    s = Sentence{};
    return;
  }
  const int n = static_cast<int>(s.tokens.size());
  for (const auto& t : s.tokens) {
    if (t.head < 0 || t.head > n) {
      throw StructuralError("head " + std::to_string(t.head) + " of token " + std::to_string(t.id) +
                            " outside sentence starting at line " + std::to_string(block_line));
    }
  }
  check_acyclic(s, block_line);
  if (s.text.empty()) s.text = s.surface();
  out.push_back(std::move(s));
  s = Sentence{};
}

}  // namespace

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_punct(const UDToken& t) { return t.upos == "PUNCT" || t.deprel == "punct"; }

std::string Sentence::surface() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

std::string Sentence::lemma_text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (is_punct(t)) continue;
    if (!out.empty()) out += ' ';
    out += lowercase(t.lemma);
  }
  return out;
}

std::string Sentence::comment_value(std::string_view key) const {
  for (const auto& c : comments) {
    std::string_view v = trim(c);
    if (v.substr(0, key.size()) != key) continue;
    v = trim(v.substr(key.size()));
    if (v.empty() || v.front() != '=') continue;
    return std::string(trim(v.substr(1)));
  }
  return {};
}

std::vector<Sentence> parse_conllu(std::string_view text) {
  std::vector<Sentence> out;
  Sentence cur;
  std::size_t line_no = 0;
  std::size_t block_line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (trim(line).empty()) {
      finish_sentence(cur, block_line, out);
      block_line = line_no + 1;
      continue;
    }
    if (line.front() == '#') {
      std::string body(line.substr(1));
      cur.comments.push_back(body);
      std::string_view b = trim(body);
      if (b.substr(0, 4) == "text") {
        auto rest = trim(b.substr(4));
        if (!rest.empty() && rest.front() == '=') cur.text = std::string(trim(rest.substr(1)));
      }
      continue;
    }

    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " + std::to_string(cols.size()),
                       line_no);
    }
    if (cols[0].find('-') != std::string_view::npos || cols[0].find('.') != std::string_view::npos)
      continue;

    UDToken t;
    if (!parse_int(cols[0], t.id)) throw ParseError("bad token id '" + std::string(cols[0]) + "'", line_no);
    if (t.id != static_cast<int>(cur.tokens.size()) + 1) {
      throw ParseError("token id " + std::to_string(t.id) + " out of sequence", line_no);
    }
    if (!parse_int(cols[6], t.head)) throw ParseError("bad head '" + std::string(cols[6]) + "'", line_no);
    if (t.head == t.id) throw StructuralError("token " + std::to_string(t.id) + " is its own head (line " + std::to_string(line_no) + ")");
    t.form = cols[1];
    t.lemma = cols[2] == "_" && cols[1] != "_" ? lowercase(cols[1]) : std::string(cols[2]);
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    t.deprel = cols[7];
    t.misc = cols[9];
    if (t.form.empty() || t.deprel.empty()) throw ParseError("empty FORM or DEPREL", line_no);
    cur.tokens.push_back(std::move(t));
  }
  finish_sentence(cur, block_line, out);
  return out;
}

std::vector<Sentence> read_conllu_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_conllu(ss.str());
}

std::string write_conllu(const Sentence& sentence) {
  std::ostringstream os;
  os << "# text = " << (sentence.text.empty() ? sentence.surface() : sentence.text) << '\n';
  for (const auto& t : sentence.tokens) {
    os << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << t.xpos << '\t'
       << t.feats << '\t' << t.head << '\t' << t.deprel << "\t_\t" << t.misc << '\n';
  }
  os << '\n';
  return os.str();
}

std::vector<std::vector<int>> dependents(const std::vector<UDToken>& tokens) {
  std::vector<std::vector<int>> deps(tokens.size() + 1);
  for (const auto& t : tokens) {
    if (t.head >= 0 && t.head <= static_cast<int>(tokens.size())) deps[t.head].push_back(t.id);
  }
  return deps;
}

std::vector<int> subtree(const std::vector<UDToken>& tokens, int id) {
  auto deps = dependents(tokens);
  std::vector<int> out;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (int d : deps[cur]) stack.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int root_id(const std::vector<UDToken>& tokens) {
  int root = 0;
  for (const auto& t : tokens) {
    if (t.head != 0) continue;
    if (root != 0) throw StructuralError("multiple roots (tokens " + std::to_string(root) + " and " + std::to_string(t.id) + ")");
    root = t.id;
  }
  if (root == 0) throw StructuralError("sentence has no root");
  return root;
}

void renumber(std::vector<UDToken>& tokens) {
  std::unordered_map<int, int> remap;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!remap.emplace(tokens[i].id, static_cast<int>(i) + 1).second)
      throw StructuralError("duplicate token id " + std::to_string(tokens[i].id));
  }
  for (auto& t : tokens) {
    t.id = remap.at(t.id);
    if (t.head == 0) continue;
    auto it = remap.find(t.head);
    if (it == remap.end()) throw StructuralError("dangling head " + std::to_string(t.head));
    t.head = it->second;
  }
}

}  // namespace monolog
