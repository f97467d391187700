#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace monolog {

// One row of a CoNLL-U sentence. Ids are 1-based; head 0 marks the root.
struct UDToken {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;
  std::string deprel;
  std::string misc = "_";
};

struct Sentence {
  std::string text;                   // from "# text = ..." or the joined forms
  std::vector<std::string> comments;  // every comment line, without the leading '#'
  std::vector<UDToken> tokens;

  /// Surface forms joined by single spaces.
  std::string surface() const;
  /// Lowercased lemmas of non-punctuation tokens, joined by single spaces.
  std::string lemma_text() const;
  /// Look up a comment of the form "key = value".
  std::string comment_value(std::string_view key) const;
};

/// Reads a CoNLL-U document. Multiword ranges ("3-4") and empty nodes ("5.1")
/// are skipped. Throws ParseError on malformed rows and StructuralError when a
/// head chain never reaches the root.
std::vector<Sentence> parse_conllu(std::string_view text);
std::vector<Sentence> read_conllu_file(const std::string& path);

std::string write_conllu(const Sentence& sentence);

/// Renumbers tokens 1..n in vector order. Ids on input only need to be unique;
/// heads are remapped through them. Throws StructuralError on a dangling head.
void renumber(std::vector<UDToken>& tokens);

bool is_punct(const UDToken& t);

/// deps[h] lists the ids whose head is h, in surface order; deps[0] holds the root(s).
std::vector<std::vector<int>> dependents(const std::vector<UDToken>& tokens);
/// Ids of `id` and all its descendants, ascending.
std::vector<int> subtree(const std::vector<UDToken>& tokens, int id);
/// Id of the token whose head is 0; StructuralError unless there is exactly one.
int root_id(const std::vector<UDToken>& tokens);
std::string lowercase(std::string_view s);

}  // namespace monolog
