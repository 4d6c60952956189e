// Copyright 2026 The Hallucinator Authors. All Rights Reserved.
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

#include "hal/eval/recall.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace hal::eval {

namespace {

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double RecallReport::chunk_recall() const { return percent(chunks_recalled, chunks_total); }
double RecallReport::utterance_recall() const { return percent(utterances_recalled, utterances_total); }

bool chunk_recalled(const ErrorChunk& chunk, const Words& gold, const std::vector<Words>& hyps) {
  for (const auto& h : hyps) {
    for (const auto& c : extract_error_chunks(gold, h)) {
      if (c.gold_start == chunk.gold_start && c.gold == chunk.gold && c.hyp == chunk.hyp) return true;
      if (c.gold_start > chunk.gold_start) break;
    }
  }
  return false;
}

RecallReport evaluate_recall(const std::vector<EvalItem>& items, const std::vector<decode::NBestList>& lists,
                             std::size_t k) {
  if (k == 0) throw std::invalid_argument("recall needs K >= 1");
  const auto index = decode::index_nbest(lists);
  RecallReport r;
  r.k = k;
  std::size_t gold_words = 0, ref_errors = 0, top_errors = 0;
  for (const auto& item : items) {
    if (item.gold.empty()) throw std::invalid_argument("test item '" + item.id + "' has no gold words");
    auto it = index.find(item.id);
    if (it == index.end()) throw std::invalid_argument("no n-best list for test item '" + item.id + "'");
    const auto& entries = it->second->entries;
    std::vector<Words> hyps;
    for (std::size_t i = 0; i < entries.size() && i < k; ++i) hyps.push_back(entries[i].words);

    ++r.utterances_total;
    if (std::find(hyps.begin(), hyps.end(), item.reference) != hyps.end()) ++r.utterances_recalled;

    std::vector<std::vector<ErrorChunk>> hyp_chunks;
    for (const auto& h : hyps) hyp_chunks.push_back(extract_error_chunks(item.gold, h));
    for (const auto& chunk : extract_error_chunks(item.gold, item.reference)) {
      ++r.chunks_total;
      const bool hit = std::any_of(hyp_chunks.begin(), hyp_chunks.end(), [&](const auto& cs) {
        return std::any_of(cs.begin(), cs.end(), [&](const ErrorChunk& c) {
          return c.gold_start == chunk.gold_start && c.gold == chunk.gold && c.hyp == chunk.hyp;
        });
      });
      if (hit) ++r.chunks_recalled;
    }

    gold_words += item.gold.size();
    ref_errors += edit_distance(item.gold, item.reference);
    top_errors += edit_distance(item.gold, hyps.empty() ? Words{} : hyps.front());
  }
  if (gold_words > 0) {
    r.reference_wer = static_cast<double>(ref_errors) / static_cast<double>(gold_words);
    r.top1_wer = static_cast<double>(top_errors) / static_cast<double>(gold_words);
  }
  return r;
}

double chunk_recall_at_k(const std::vector<EvalItem>& items, const std::vector<decode::NBestList>& lists,
                         std::size_t k) {
  return evaluate_recall(items, lists, k).chunk_recall();
}

double utterance_recall_at_k(const std::vector<EvalItem>& items, const std::vector<decode::NBestList>& lists,
                             std::size_t k) {
  return evaluate_recall(items, lists, k).utterance_recall();
}

std::string format_report(const RecallReport& r) {
  std::string out;
  auto kv = [&](const char* k, const std::string& v) { out += std::string(k) + '\t' + v + '\n'; };
  kv("k", std::to_string(r.k));
  kv("chunk_recall", fixed(r.chunk_recall(), 4));
  kv("chunks_recalled", std::to_string(r.chunks_recalled));
  kv("chunks_total", std::to_string(r.chunks_total));
  kv("utterance_recall", fixed(r.utterance_recall(), 4));
  kv("utterances_recalled", std::to_string(r.utterances_recalled));
  kv("utterances_total", std::to_string(r.utterances_total));
  kv("reference_wer", fixed(r.reference_wer, 6));
  kv("top1_wer", fixed(r.top1_wer, 6));
  return out;
}

std::string format_report_table(const RecallReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "metric               value      count\n"
                "chunk recall@%-6zu  %7.2f%%  %zu/%zu\n"
                "utterance recall@%-3zu %7.2f%%  %zu/%zu\n"
                "reference WER        %7.2f%%\n"
                "top-1 WER            %7.2f%%\n",
                r.k, r.chunk_recall(), r.chunks_recalled, r.chunks_total, r.k, r.utterance_recall(),
                r.utterances_recalled, r.utterances_total, 100.0 * r.reference_wer, 100.0 * r.top1_wer);
  return buf;
}

}  // namespace hal::eval
