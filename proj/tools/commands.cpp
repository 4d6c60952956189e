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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>

#include "hal/augment/augment.hpp"
#include "hal/decode/beam.hpp"
#include "hal/decode/nbest.hpp"
#include "hal/decode/sampler.hpp"
#include "hal/eval/recall.hpp"
#include "hal/model/checkpoint.hpp"
#include "hal/model/params.hpp"
#include "hal/model/session.hpp"
#include "hal/synth/channel.hpp"
#include "hal/text/corpus.hpp"
#include "hal/text/vocab.hpp"
#include "hal/train/trainer.hpp"
#include "hal/util/hash.hpp"
#include "hal/util/io.hpp"
#include "hal/util/rng.hpp"

#ifndef HAL_VERSION
#define HAL_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace hal::cli {
namespace {

using text::Vocab;

const char* const kRoles[] = {"src", "tgt", "phone"};

// Files of a preprocessed data directory.
std::string corpus_file(const std::string& dir) { return (fs::path(dir) / "corpus.tsv").string(); }
std::string phones_file(const std::string& dir) { return (fs::path(dir) / "phones.tsv").string(); }
std::string vocab_file(const std::string& dir, const std::string& role) {
  return (fs::path(dir) / (role + ".vocab")).string();
}

std::string input_hash(const std::string& path) {
  if (!fs::is_directory(path)) return hex64(hash_file(path));
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_regular_file() && e.path().filename() != "manifest") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  std::uint64_t h = fnv1a64("");
  for (const auto& n : names) {
    h = fnv1a64(n, h);
    h = fnv1a64(hex64(hash_file((fs::path(path) / n).string())), h);
  }
  return hex64(h);
}

/// Run record next to the primary output.
void write_manifest(const RunConfig& rc, const std::string& path, const std::vector<std::string>& input_keys,
                    const std::vector<std::string>& extra = {}) {
  std::string out;
  out += "tool\thal\n";
  out += std::string("version\t") + HAL_VERSION + "\n";
  out += "command\t" + rc.command() + "\n";
  for (const auto& s : rc.schema())
    if (s.key == "seed") out += "seed\t" + rc.str("seed") + "\n";
  for (const auto& line : split(rc.echo(), '\n'))
    if (!line.empty()) out += "config\t" + line + "\n";
  for (const auto& k : input_keys)
    if (rc.has(k)) out += "input\t" + k + "\t" + rc.str(k) + "\t" + input_hash(rc.str(k)) + "\n";
  for (const auto& e : extra) out += e + "\n";
  write_file_atomic(path, out);
}

void ensure_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

struct Dataset {
  std::vector<text::UtterancePair> pairs;
  Vocab src, tgt, phone;
  std::vector<model::VocabRef> refs;
};

Dataset load_dataset(const std::string& dir) {
  if (!fs::is_regular_file(corpus_file(dir)))
    throw ValidationError(dir + " is not a preprocessed data directory (no corpus.tsv)");
  Dataset d;
  std::map<std::string, text::Phones> phones;
  for (const auto& line : read_lines(phones_file(dir))) {
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() != 2) throw ValidationError(phones_file(dir) + ": malformed line");
    phones[f[0]] = split_ws(f[1]);
  }
  for (const auto& r : text::load_corpus(corpus_file(dir))) {
    text::UtterancePair p;
    p.id = r.id;
    p.true_words = split_ws(r.true_text);
    if (r.recognized_text) {
      p.has_recognized = true;
      p.recognized_words = split_ws(*r.recognized_text);
    }
    const auto it = phones.find(r.id);
    if (it == phones.end()) throw ValidationError(phones_file(dir) + ": no entry for '" + r.id + "'");
    p.true_phones = it->second;
    d.pairs.push_back(std::move(p));
  }
  Vocab* slots[] = {&d.src, &d.tgt, &d.phone};
  for (int i = 0; i < 3; ++i) {
    const std::string path = vocab_file(dir, kRoles[i]);
    const std::string contents = read_file(path);
    *slots[i] = Vocab::parse(contents);
    d.refs.push_back({kRoles[i], path, slots[i]->content_hash(), contents});
  }
  return d;
}

bool same_vocabs(const Dataset& a, const Dataset& b) {
  for (std::size_t i = 0; i < a.refs.size(); ++i)
    if (a.refs[i].hash != b.refs[i].hash) return false;
  return true;
}

std::vector<text::UtterancePair> prepare_corpus(const std::vector<text::CorpusRecord>& records,
                                                const text::Lexicon& lexicon, text::FilterReport* report) {
  const text::TableG2P g2p;
  std::vector<text::UtterancePair> pairs;
  pairs.reserve(records.size());
  for (const auto& r : records) pairs.push_back(text::prepare_pair(r, lexicon, g2p));
  return text::filter_pairs(std::move(pairs), report);
}

train::TrainPlan plan_from(const RunConfig& rc) {
  train::TrainPlan plan;
  plan.epochs = rc.size("epochs");
  plan.lr = rc.real("lr");
  plan.momentum = rc.real("momentum");
  plan.batch_tokens = rc.size("batch_tokens");
  plan.clip_norm = rc.real("clip_norm");
  plan.patience = rc.size("patience");
  plan.seed = rc.u64("seed");
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  return plan;
}

std::vector<KeySpec> plan_keys(const std::string& epochs) {
  return {
      {"epochs", epochs, "training epochs"},
      {"lr", "0.1", "learning rate"},
      {"momentum", "0.99", "Nesterov momentum"},
      {"batch_tokens", "4000", "token budget per batch"},
      {"clip_norm", "0.1", "gradient norm clip, 0 disables"},
      {"patience", "10", "early-stop patience in epochs, 0 disables"},
      {"seed", "1", "random seed"},
  };
}

std::vector<KeySpec> with(std::vector<KeySpec> a, const std::vector<KeySpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Trains, writes checkpoint, log and manifest. Shared by train and finetune.
int run_training(const RunConfig& rc, const model::Checkpoint& start, const std::vector<train::Example>& train_set,
                 const std::vector<train::Example>& valid_set, bool finetuning,
                 const std::vector<std::string>& input_keys) {
  const auto plan = plan_from(rc);
  const std::string out = rc.str("out");
  ensure_parent(out);
  std::string log;
  auto on_epoch = [&](const train::EpochLog& e) {
    const std::string line = train::format_epoch(e);
    log += line + "\n";
    std::cerr << rc.command() << ": epoch " << line << "\n";
  };
  train::TrainResult result;
  try {
    result = finetuning ? train::finetune(start, train_set, valid_set, plan, on_epoch)
                        : train::train(start, train_set, valid_set, plan, on_epoch);
  } catch (const train::DivergenceError& e) {
    model::save_checkpoint(out + ".last_good", e.last_good());
    write_file_atomic(out + ".log", log);
    std::cerr << rc.command() << ": " << e.what() << "; last good checkpoint written to " << out << ".last_good\n";
    return 1;
  }
  model::save_checkpoint(out, result.best);
  write_file_atomic(out + ".log", log);
  char best[64];
  std::snprintf(best, sizeof best, "best_valid\t%.6f", result.best.best_valid);
  write_manifest(rc, out + ".manifest", input_keys,
                 {"output\t" + out, "epoch\t" + std::to_string(result.best.epoch), best});
  return 0;
}

model::SourceTokens source_tokens(const model::ModelConfig& cfg, const text::UtterancePair& p, const Vocab& src,
                                  const Vocab& phones) {
  model::SourceTokens s;
  s.words = src.encode(p.true_words);
  if (cfg.dual()) s.phones = phones.encode(p.true_phones);
  return s;
}

decode::StopRule parse_stop_rule(const std::string& s) {
  if (s == "saturate") return decode::StopRule::saturate;
  if (s == "reach_unique") return decode::StopRule::reach_unique;
  throw ValidationError("stop_rule must be saturate or reach_unique, got '" + s + "'");
}

}  // namespace

int cmd_preprocess(const RunConfig& rc) {
  const auto records = text::load_corpus(rc.input_path("input"));
  const auto lexicon = text::Lexicon::load(rc.input_path("lexicon"));
  text::FilterReport report;
  const auto pairs = prepare_corpus(records, lexicon, &report);
  const std::string out = rc.str("out");
  fs::create_directories(out);

  Vocab src, tgt, phone;
  if (rc.has("vocab_dir")) {
    const std::string dir = rc.input_path("vocab_dir");
    src = Vocab::load(vocab_file(dir, "src"));
    tgt = Vocab::load(vocab_file(dir, "tgt"));
    phone = Vocab::load(vocab_file(dir, "phone"));
  } else {
    std::vector<text::UtterancePair> all = pairs;
    if (rc.has("union_with")) {
      for (const auto& path : split(rc.str("union_with"), ',')) {
        if (!fs::exists(path)) throw ValidationError("union_with corpus not found: " + path);
        const auto more = prepare_corpus(text::load_corpus(path), lexicon, nullptr);
        all.insert(all.end(), more.begin(), more.end());
      }
    }
    std::vector<text::Words> s, t, p;
    for (const auto& x : all) {
      s.push_back(x.true_words);
      if (x.has_recognized) t.push_back(x.recognized_words);
      p.push_back(x.true_phones);
    }
    const std::size_t min_count = rc.size("min_count");
    if (t.empty() || std::all_of(t.begin(), t.end(), [](const auto& w) { return w.empty(); }))
      throw ValidationError("preprocess: no recognized text to build the target vocabulary from; set vocab_dir");
    src = Vocab::build(s, min_count);
    tgt = Vocab::build(t, min_count);
    phone = Vocab::build(p, 1);
  }

  std::vector<text::CorpusRecord> tokenized;
  std::string phones_out;
  for (const auto& p : pairs) {
    tokenized.push_back(text::to_record(p));
    phones_out += p.id + "\t" + join(p.true_phones, " ") + "\n";
  }
  write_file_atomic(corpus_file(out), text::format_corpus(tokenized));
  write_file_atomic(phones_file(out), phones_out);
  write_file_atomic(vocab_file(out, "src"), src.serialize());
  write_file_atomic(vocab_file(out, "tgt"), tgt.serialize());
  write_file_atomic(vocab_file(out, "phone"), phone.serialize());
  char removed[96];
  std::snprintf(removed, sizeof removed, "removed\t%zu\t%zu\t%.2f%%", report.removed, report.total,
                report.removed_percent());
  write_manifest(rc, (fs::path(out) / "manifest").string(), {"input", "lexicon", "vocab_dir"},
                 {"output\t" + out, removed});
  std::cerr << "preprocess: kept " << pairs.size() << " of " << report.total << " pairs (" << report.removed
            << " removed)\n";
  return 0;
}

int cmd_train(const RunConfig& rc) {
  const Dataset data = load_dataset(rc.input_path("train_data"));
  const Dataset valid = load_dataset(rc.input_path("valid_data"));
  if (!same_vocabs(data, valid))
    throw ValidationError("valid_data was not prepared with the training vocabularies; preprocess it with vocab_dir");

  model::ModelConfig cfg;
  try {
    cfg = model::preset(rc.str("model"), model::parse_mode(rc.str("mode")));
    for (const char* key : {"embed_dim", "word_encoder", "phone_encoder", "dec_layers", "dec_kernel", "max_positions",
                            "dropout", "encoder_dropout"})
      if (rc.has(key)) cfg.set(key, rc.str(key));
    cfg.src_vocab = data.src.size();
    cfg.tgt_vocab = data.tgt.size();
    cfg.phone_vocab = cfg.dual() ? data.phone.size() : 0;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const auto plan = plan_from(rc);
  const text::Vocab* phones = cfg.dual() ? &data.phone : nullptr;
  const auto train_set = train::encode_examples(data.pairs, data.src, data.tgt, phones);
  const auto valid_set = train::encode_examples(valid.pairs, data.src, data.tgt, phones);

  model::Checkpoint start;
  start.config = cfg;
  start.params = model::init_params<float>(cfg, derive_seed(plan.seed, "init"));
  start.optimizer = num::NesterovState<float>(start.params, static_cast<float>(plan.lr),
                                              static_cast<float>(plan.momentum));
  start.vocabs = data.refs;
  if (!cfg.dual()) start.vocabs.pop_back();
  std::cerr << "train: " << model::parameter_count(cfg) << " parameters, " << train_set.size() << " examples\n";
  return run_training(rc, start, train_set, valid_set, false, {"train_data", "valid_data"});
}

int cmd_finetune(const RunConfig& rc) {
  const auto base = model::load_checkpoint(rc.input_path("base"));
  const Dataset data = load_dataset(rc.input_path("train_data"));
  const Dataset valid = load_dataset(rc.input_path("valid_data"));
  const bool remap = rc.flag("remap");
  std::vector<model::VocabRef> refs = data.refs, valid_refs = valid.refs;
  if (!base.config.dual()) {
    refs.pop_back();
    valid_refs.pop_back();
  }
  train::check_vocab_compat(base, refs, remap);
  train::check_vocab_compat(base, valid_refs, remap);
  const Vocab src = Vocab::parse(base.vocab("src").contents);
  const Vocab tgt = Vocab::parse(base.vocab("tgt").contents);
  Vocab phone;
  if (base.config.dual()) phone = Vocab::parse(base.vocab("phone").contents);
  const text::Vocab* phones = base.config.dual() ? &phone : nullptr;
  const auto train_set = train::encode_examples(data.pairs, src, tgt, phones);
  const auto valid_set = train::encode_examples(valid.pairs, src, tgt, phones);
  return run_training(rc, base, train_set, valid_set, true, {"base", "train_data", "valid_data"});
}

int cmd_decode(const RunConfig& rc) {
  const auto ck = model::load_checkpoint(rc.input_path("checkpoint"));
  const Dataset data = load_dataset(rc.input_path("data"));
  const Vocab src = Vocab::parse(ck.vocab("src").contents);
  const Vocab tgt = Vocab::parse(ck.vocab("tgt").contents);
  Vocab phone;
  if (ck.config.dual()) phone = Vocab::parse(ck.vocab("phone").contents);

  const std::string method = rc.str("method");
  if (method != "beam" && method != "sample") throw ValidationError("method must be beam or sample, got '" + method + "'");
  const std::size_t k = rc.size("k");
  if (k == 0) throw ValidationError("k must be positive");
  decode::BeamOptions beam;
  beam.beam = rc.size("beam");
  beam.k = k;
  if (method == "beam" && k > beam.beam) throw ValidationError("k must not exceed beam");
  decode::SampleOptions sample;
  sample.min_samples = rc.size("min_samples");
  sample.max_samples = rc.size("max_samples");
  sample.target_unique = k;
  sample.rule = parse_stop_rule(rc.str("stop_rule"));
  if (sample.min_samples == 0 || sample.min_samples > sample.max_samples)
    throw ValidationError("need 0 < min_samples <= max_samples");
  const std::uint64_t seed = rc.u64("seed");
  const std::size_t max_len_cap = rc.size("max_len");

  const model::DecoderWeights weights(ck.config, ck.params);
  std::vector<decode::NBestList> lists;
  std::size_t drawn = 0;
  for (const auto& p : data.pairs) {
    const auto s = source_tokens(ck.config, p, src, phone);
    model::DecoderSession session(weights, s);
    std::size_t max_len = std::min(decode::default_max_len(p.true_words.size()), ck.config.max_positions);
    if (max_len_cap > 0) max_len = std::min(max_len, max_len_cap);
    std::vector<decode::Hypothesis> hyps;
    if (method == "beam") {
      beam.max_len = max_len;
      hyps = decode::beam_search(session, beam);
    } else {
      sample.max_len = max_len;
      decode::SampleStats stats;
      hyps = decode::sample_decode(session, sample, derive_seed(seed, p.id), &stats);
      drawn += stats.drawn;
    }
    lists.push_back(decode::to_nbest(p.id, hyps, tgt));
  }
  const std::string out = rc.str("out");
  ensure_parent(out);
  write_file_atomic(out, decode::format_nbest(lists));
  write_manifest(rc, out + ".manifest", {"checkpoint", "data"},
                 {"output\t" + out, "utterances\t" + std::to_string(lists.size())});
  std::cerr << "decode: " << lists.size() << " utterances";
  if (method == "sample") std::cerr << ", " << drawn << " samples drawn";
  std::cerr << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& rc) {
  const Dataset data = load_dataset(rc.input_path("data"));
  const auto lists = decode::load_nbest(rc.input_path("nbest"));
  std::vector<eval::EvalItem> items;
  for (const auto& p : data.pairs) {
    if (!p.has_recognized) throw ValidationError("evaluate: pair '" + p.id + "' has no recognized text");
    items.push_back({p.id, p.true_words, p.recognized_words});
  }
  const std::size_t k = rc.size("k");
  const auto report = eval::evaluate_recall(items, lists, k);
  const std::string out = rc.str("out");
  ensure_parent(out);
  write_file_atomic(out, eval::format_report(report));
  write_manifest(rc, out + ".manifest", {"data", "nbest"}, {"output\t" + out});
  std::cout << eval::format_report_table(report);
  return 0;
}

int cmd_augment(const RunConfig& rc) {
  const auto corpus = text::load_corpus(rc.input_path("input"));
  if (rc.has("checkpoint") == rc.has("nbest")) throw ValidationError("augment: set exactly one of checkpoint and nbest");
  augment::AugmentPolicy policy;
  policy.rate = rc.real("rate");
  policy.resample_each_epoch = rc.flag("resample");
  policy.seed = rc.u64("seed");
  try {
    policy.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const text::TableG2P g2p;
  text::Lexicon lexicon;
  std::unique_ptr<augment::HypothesisSource> source;
  model::Checkpoint ck;
  if (rc.has("checkpoint")) {
    ck = model::load_checkpoint(rc.input_path("checkpoint"));
    if (ck.config.dual()) {
      if (!rc.has("lexicon")) throw ValidationError("augment: a dual model needs lexicon");
      lexicon = text::Lexicon::load(rc.input_path("lexicon"));
    }
    source = std::make_unique<augment::ModelSource>(ck, &lexicon, &g2p);
  } else {
    source = std::make_unique<augment::NBestSource>(decode::load_nbest(rc.input_path("nbest")));
  }
  const auto view = augment::augment_corpus(corpus, *source, policy, rc.size("epoch"));
  const std::string out = rc.str("out");
  const std::string sidecar = rc.has("sidecar") ? rc.str("sidecar") : out + ".replaced";
  ensure_parent(out);
  ensure_parent(sidecar);
  write_file_atomic(out, augment::format_lines(view.lines));
  write_file_atomic(sidecar, augment::format_sidecar(corpus, view));
  const auto n = static_cast<std::size_t>(std::count(view.replaced.begin(), view.replaced.end(), true));
  write_manifest(rc, out + ".manifest", {"input", "checkpoint", "nbest", "lexicon"},
                 {"output\t" + out, "sidecar\t" + sidecar, "replaced\t" + std::to_string(n)});
  std::cerr << "augment: replaced " << n << " of " << corpus.size() << " lines\n";
  return 0;
}

int cmd_synthcorpus(const RunConfig& rc) {
  const auto channel = synth::Channel::load(rc.input_path("channel"));
  const std::size_t n = rc.size("size");
  if (n == 0) throw ValidationError("size must be positive");
  const auto records = synth::synthesize(channel, n, rc.u64("seed"), rc.str("prefix"));
  const std::string out = rc.str("out");
  ensure_parent(out);
  write_file_atomic(out, text::format_corpus(records));
  std::vector<std::string> extra{"output\t" + out};
  if (rc.has("oracle")) {
    // Exact channel distribution per source, as an N-best file scored by probability.
    const std::size_t k = rc.size("k");
    std::vector<decode::NBestList> lists;
    for (const auto& r : records) {
      decode::NBestList list{r.id, {}};
      for (auto& [words, p] : channel.enumerate(split_ws(r.true_text))) {
        if (list.entries.size() == k) break;
        list.entries.push_back({words, p});
      }
      lists.push_back(std::move(list));
    }
    ensure_parent(rc.str("oracle"));
    write_file_atomic(rc.str("oracle"), decode::format_nbest(lists));
    extra.push_back("oracle\t" + rc.str("oracle"));
  }
  write_manifest(rc, out + ".manifest", {"channel"}, extra);
  return 0;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> all = {
      {"preprocess",
       "tokenize a parallel corpus, phonemize its true side and write vocabularies",
       {
           {"input", "", "raw corpus: id<TAB>true_text[<TAB>recognized_text]", true},
           {"lexicon", "", "pronunciation lexicon: word<TAB>phones", true},
           {"out", "", "output directory", true},
           {"vocab_dir", "", "reuse the vocabularies of this preprocessed directory"},
           {"union_with", "", "comma-separated raw corpora whose words join the vocabularies"},
           {"min_count", "1", "minimum word count for the word vocabularies"},
       },
       cmd_preprocess},
      {"train",
       "train a hallucination model from scratch",
       with(
           {
               {"train_data", "", "preprocessed training directory", true},
               {"valid_data", "", "preprocessed validation directory", true},
               {"out", "", "checkpoint path", true},
               {"model", "desk", "architecture preset: paper, desk or toy"},
               {"mode", "single", "single (words) or dual (words and phonemes)"},
               {"embed_dim", "", "override the preset"},
               {"word_encoder", "", "override the preset, e.g. 64x3*2"},
               {"phone_encoder", "", "override the preset"},
               {"dec_layers", "", "override the preset"},
               {"dec_kernel", "", "override the preset"},
               {"max_positions", "", "override the preset"},
               {"dropout", "", "override the preset"},
               {"encoder_dropout", "", "override the preset"},
           },
           plan_keys("60")),
       cmd_train},
      {"finetune",
       "continue training a checkpoint on new data with a fresh optimizer",
       with(
           {
               {"base", "", "base checkpoint", true},
               {"train_data", "", "preprocessed finetuning directory", true},
               {"valid_data", "", "preprocessed validation directory", true},
               {"out", "", "checkpoint path", true},
               {"remap", "false", "accept data prepared with other vocabularies, mapping unknown words to <unk>"},
           },
           plan_keys("15")),
       cmd_finetune},
      {"decode",
       "write an N-best list of hallucinated transcripts per utterance",
       {
           {"checkpoint", "", "trained checkpoint", true},
           {"data", "", "preprocessed directory with the true texts", true},
           {"out", "", "N-best output path", true},
           {"method", "sample", "beam or sample"},
           {"k", "100", "hypotheses per utterance"},
           {"beam", "256", "beam width"},
           {"min_samples", "250", "samples drawn before the stop rule applies"},
           {"max_samples", "1000", "sample cap"},
           {"stop_rule", "saturate", "saturate or reach_unique"},
           {"max_len", "0", "extra cap on hypothesis length, 0 for none"},
           {"seed", "1", "random seed"},
       },
       cmd_decode},
      {"evaluate",
       "score an N-best file by chunk and utterance recall",
       {
           {"data", "", "preprocessed directory with true and recognized texts", true},
           {"nbest", "", "N-best file", true},
           {"out", "", "metric file path", true},
           {"k", "100", "hypotheses considered per utterance"},
       },
       cmd_evaluate},
      {"augment",
       "replace a fraction of a corpus with hallucinated transcripts",
       {
           {"input", "", "raw corpus", true},
           {"out", "", "augmented corpus path", true},
           {"checkpoint", "", "draw alternatives from this model"},
           {"nbest", "", "draw alternatives uniformly from this N-best file"},
           {"lexicon", "", "lexicon for dual models"},
           {"rate", "0.25", "replacement probability"},
           {"resample", "false", "draw new alternatives for every epoch"},
           {"epoch", "0", "epoch index of this view"},
           {"sidecar", "", "replacement flags path (default: out.replaced)"},
           {"seed", "1", "random seed"},
       },
       cmd_augment},
      {"synthcorpus",
       "generate a parallel corpus from a synthetic noisy channel",
       {
           {"channel", "", "channel spec file", true},
           {"size", "", "number of pairs", true},
           {"out", "", "corpus path", true},
           {"prefix", "s", "id prefix"},
           {"oracle", "", "also write the exact output distribution as an N-best file"},
           {"k", "100", "entries per utterance in the oracle file"},
           {"seed", "1", "random seed"},
       },
       cmd_synthcorpus},
  };
  return all;
}

}  // namespace hal::cli
