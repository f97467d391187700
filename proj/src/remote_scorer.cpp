#include "monolog/remote_scorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>

#include "httplib.h"
#include "json.hpp"
#include "monolog/errors.hpp"

namespace monolog {

using json = nlohmann::json;

std::string resolve_scorer_url(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("MONOLOG_SCORER_URL");
  return env ? std::string(env) : std::string();
}

RemoteScorer::RemoteScorer(RemoteConfig cfg)
    : cfg_(std::move(cfg)), slots_(std::clamp(cfg_.max_in_flight, 1, kMaxInFlightCap)) {
  if (cfg_.url.empty()) throw ScoringError("remote scorer needs a URL (--scorer-url or MONOLOG_SCORER_URL)");
  while (!cfg_.url.empty() && cfg_.url.back() == '/') cfg_.url.pop_back();
  if (cfg_.batch_size == 0) cfg_.batch_size = 1;
}

namespace {

bool is_timeout(httplib::Error e) {
  return e == httplib::Error::Read || e == httplib::Error::Write || e == httplib::Error::ConnectionTimeout;
}

// Runs `fn(begin, end)` over batches of [0, n) concurrently and waits for all.
void for_batches(std::size_t n, std::size_t batch, const std::function<void(std::size_t, std::size_t)>& fn) {
  std::vector<std::future<void>> jobs;
  for (std::size_t b = 0; b < n; b += batch) {
    jobs.push_back(std::async(std::launch::async, fn, b, std::min(n, b + batch)));
  }
  std::exception_ptr first;
  for (auto& j : jobs) {
    try {
      j.get();
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

json parse_body(const std::string& body, const std::string& path) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ScoringError(path + ": malformed JSON response");
  }
}

double checked_unit(const json& v, const std::string& path) {
  if (!v.is_number()) throw ScoringError(path + ": non-numeric score");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) throw ScoringError(path + ": score outside [0, 1]");
  return x;
}

}  // namespace

std::string RemoteScorer::send(const std::string& method, const std::string& path, const std::string& body) const {
  slots_.acquire();
  const int now = ++in_flight_;
  int prev = peak_.load();
  while (now > prev && !peak_.compare_exchange_weak(prev, now)) {
  }
  struct Release {
    const RemoteScorer* self;
    ~Release() {
      --self->in_flight_;
      self->slots_.release();
    }
  } release{this};

  for (int attempt = 0; attempt < 2; ++attempt) {
    httplib::Client client(cfg_.url);
    const auto sec = cfg_.timeout_ms / 1000, usec = (cfg_.timeout_ms % 1000) * 1000;
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
    ++requests_;
    auto res = method == "GET" ? client.Get(path) : client.Post(path, body, "application/json");
    if (!res) {
      if (attempt == 0 && is_timeout(res.error())) continue;
      throw ScoringError(method + " " + path + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) throw ScoringError(method + " " + path + ": HTTP " + std::to_string(res->status));
    return res->body;
  }
  throw ScoringError(method + " " + path + ": timed out twice");
}

std::string RemoteScorer::post(const std::string& path, const std::string& body) const { return send("POST", path, body); }
std::string RemoteScorer::get(const std::string& path) const { return send("GET", path, ""); }

std::vector<Embedding> RemoteScorer::embed(const std::vector<std::string>& texts) const {
  std::vector<Embedding> out(texts.size());
  std::vector<std::size_t> missing;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (auto it = embed_cache_.find(texts[i]); it != embed_cache_.end()) out[i] = it->second;
      else missing.push_back(i);
    }
  }
  for_batches(missing.size(), cfg_.batch_size, [&](std::size_t b, std::size_t e) {
    json req = {{"texts", json::array()}};
    for (std::size_t k = b; k < e; ++k) req["texts"].push_back(texts[missing[k]]);
    const json res = parse_body(post("/embed", req.dump()), "/embed");
    if (!res.contains("vectors") || !res["vectors"].is_array() || res["vectors"].size() != e - b)
      throw ScoringError("/embed: expected one vector per text");
    if (!res.contains("dim") || !res["dim"].is_number_integer()) throw ScoringError("/embed: missing dim");
    const auto dim = res["dim"].get<std::size_t>();
    for (std::size_t k = b; k < e; ++k) {
      const auto& v = res["vectors"][k - b];
      if (!v.is_array() || v.size() != dim) throw ScoringError("/embed: vector length differs from dim");
      Embedding vec;
      vec.reserve(dim);
      for (const auto& x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) throw ScoringError("/embed: non-finite entry");
        vec.push_back(x.get<double>());
      }
      out[missing[k]] = std::move(vec);
    }
    std::size_t expected = 0;
    if (!dim_.compare_exchange_strong(expected, dim) && expected != dim)
      throw ScoringError("/embed: dimension changed between responses");
  });
  std::lock_guard<std::mutex> lock(cache_mu_);
  for (std::size_t i : missing) embed_cache_[texts[i]] = out[i];
  return out;
}

namespace {

std::vector<double> scored_pairs(const std::vector<TextPair>& pairs, std::map<TextPair, double>& cache,
                                 std::mutex& mu, std::size_t batch, const std::string& path, const char* field,
                                 const std::function<std::string(const std::string&, const std::string&)>& post) {
  std::vector<double> out(pairs.size());
  std::vector<std::size_t> missing;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (auto it = cache.find(pairs[i]); it != cache.end()) out[i] = it->second;
      else missing.push_back(i);
    }
  }
  for_batches(missing.size(), batch, [&](std::size_t b, std::size_t e) {
    json req = {{"pairs", json::array()}};
    for (std::size_t k = b; k < e; ++k) req["pairs"].push_back({pairs[missing[k]].first, pairs[missing[k]].second});
    const json res = parse_body(post(path, req.dump()), path);
    if (!res.contains(field) || !res[field].is_array() || res[field].size() != e - b)
      throw ScoringError(path + ": expected one score per pair");
    for (std::size_t k = b; k < e; ++k) out[missing[k]] = checked_unit(res[field][k - b], path);
  });
  std::lock_guard<std::mutex> lock(mu);
  for (std::size_t i : missing) cache[pairs[i]] = out[i];
  return out;
}

}  // namespace

std::vector<double> RemoteScorer::word_similarity(const std::vector<TextPair>& pairs) const {
  return scored_pairs(pairs, sim_cache_, cache_mu_, cfg_.batch_size, "/word-similarity", "scores",
                      [this](const std::string& p, const std::string& b) { return post(p, b); });
}

std::vector<double> RemoteScorer::paraphrase(const std::vector<TextPair>& pairs) const {
  return scored_pairs(pairs, para_cache_, cache_mu_, cfg_.batch_size, "/paraphrase", "probs",
                      [this](const std::string& p, const std::string& b) { return post(p, b); });
}

std::vector<std::string> RemoteScorer::parse(const std::vector<std::string>& texts) const {
  std::vector<std::string> out(texts.size());
  std::vector<std::size_t> missing;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (auto it = parse_cache_.find(texts[i]); it != parse_cache_.end()) out[i] = it->second;
      else missing.push_back(i);
    }
  }
  for_batches(missing.size(), cfg_.batch_size, [&](std::size_t b, std::size_t e) {
    json req = {{"texts", json::array()}};
    for (std::size_t k = b; k < e; ++k) req["texts"].push_back(texts[missing[k]]);
    const json res = parse_body(post("/parse", req.dump()), "/parse");
    if (!res.contains("conllu") || !res["conllu"].is_array() || res["conllu"].size() != e - b)
      throw ScoringError("/parse: expected one document per text");
    for (std::size_t k = b; k < e; ++k) {
      if (!res["conllu"][k - b].is_string()) throw ScoringError("/parse: document is not a string");
      out[missing[k]] = res["conllu"][k - b].get<std::string>();
    }
  });
  std::lock_guard<std::mutex> lock(cache_mu_);
  for (std::size_t i : missing) parse_cache_[texts[i]] = out[i];
  return out;
}

std::string RemoteScorer::health() const {
  const json res = parse_body(get("/health"), "/health");
  if (!res.contains("status") || res["status"] != "ok") throw ScoringError("/health: status is not ok");
  return res.contains("models") ? res["models"].dump() : "{}";
}

Sentence parse_remote(const RemoteScorer& client, const std::string& text) {
  const auto docs = client.parse({text});
  auto sentences = parse_conllu(docs.at(0));
  if (sentences.size() != 1) throw ParseError("/parse returned " + std::to_string(sentences.size()) + " sentences", 0);
  return sentences.front();
}

}  // namespace monolog
