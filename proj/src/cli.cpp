#include "slrkit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "parallel.hpp"
#include "slrkit/calibration.hpp"
#include "slrkit/corpus.hpp"
#include "slrkit/error.hpp"
#include "slrkit/highlighter.hpp"
#include "slrkit/metrics.hpp"
#include "slrkit/service.hpp"
#include "slrkit/tagging.hpp"
#include "slrkit/verification.hpp"

namespace slrkit {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit statuses.
constexpr int kOk = 0;
constexpr int kFlagged = 1;
constexpr int kFailure = 2;

struct GlobalOptions {
  std::string lexicon;
  std::string vectors;
  std::optional<double> p_weight, rf_weight, wup_threshold, vec_threshold;
};

struct Context {
  const GlobalOptions& global;
  std::ostream& out;
  std::ostream& err;

  Lexicon lexicon() const {
    fs::path dir = global.lexicon.empty() ? default_lexicon_dir() : fs::path(global.lexicon);
    return Lexicon::load(dir);
  }

  VectorStore vectors() const {
    return global.vectors.empty() ? VectorStore{} : load_vectors(global.vectors);
  }

  SimilarityConfig similarity(SimilarityConfig base) const {
    if (global.p_weight) base.p_weight = *global.p_weight;
    if (global.rf_weight) base.rf_weight = *global.rf_weight;
    if (global.wup_threshold) base.wup_threshold = *global.wup_threshold;
    if (global.vec_threshold) base.vec_threshold = *global.vec_threshold;
    base.validate();
    return base;
  }
};

/// Writes to --out when given, else to stdout.
void emit(const Context& ctx, const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw LoadError(out_path, 0, "cannot write file");
  f << text;
  if (!f) throw LoadError(out_path, 0, "write failed");
}

std::string report_text(const std::string& kind, ordered_json meta, ordered_json body) {
  Report r;
  r.kind = kind;
  meta["tool"] = std::string("slrkit ") + kVersion;
  meta["created_at"] = utc_timestamp();
  r.meta = std::move(meta);
  r.body = std::move(body);
  return serialize_report(r);
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

// highlight -----------------------------------------------------------------

struct HighlightArgs {
  std::string document, keywords, format = "ansi", out;
  bool explain = false, pretagged = false;
};

int cmd_highlight(const Context& ctx, const HighlightArgs& a) {
  auto format = parse_render_format(a.format);
  if (!format) throw CLI::ValidationError("--format", "expected ansi, html or json");
  Lexicon lex = ctx.lexicon();
  auto kw = load_keyword_file(a.keywords, &lex);
  auto config = ctx.similarity(kw.config);
  VectorStore store = ctx.vectors();
  TaggedDocument doc;
  if (a.pretagged) {
    doc = ingest_pretagged(a.document);
  } else {
    std::ifstream in(a.document, std::ios::binary);
    if (!in) throw LoadError(a.document, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    doc = tag(ss.str(), lex);
  }
  auto h = highlight(std::move(doc), kw.keywords, store, lex, config);
  emit(ctx, a.out, render(h, *format, {.explain = a.explain}));
  return kOk;
}

// calibrate -----------------------------------------------------------------

struct CalibrateArgs {
  std::string corpus, keywords, format = "text", out;
  unsigned jobs = 1;
};

int cmd_calibrate(const Context& ctx, const CalibrateArgs& a) {
  auto docs = load_documents(a.corpus);
  if (docs.empty()) throw LoadError(a.corpus, 0, "corpus has no .txt documents");
  Lexicon lex = ctx.lexicon();
  auto kw = load_keyword_file(a.keywords, &lex);
  auto config = ctx.similarity(kw.config);
  VectorStore store = ctx.vectors();
  auto report = calibrate(docs, kw.keywords, store, lex, config, a.jobs);
  if (!report.summary) throw LoadError(a.corpus, 0, "corpus has no words");

  if (a.format == "json") {
    ordered_json meta;
    meta["corpus"] = a.corpus;
    meta["keywords"] = a.keywords;
    meta["jobs"] = a.jobs;
    emit(ctx, a.out, report_text("calibrate", meta, calibration_to_json(report)));
  } else {
    std::size_t width = 8;
    for (const auto& d : report.documents) width = std::max(width, d.id.size());
    std::ostringstream s;
    s << std::left << std::setw(static_cast<int>(width)) << "document" << std::right << std::setw(8)
      << "words" << std::setw(13) << "highlighted" << std::setw(8) << "rate" << "\n";
    for (const auto& d : report.documents) {
      s << std::left << std::setw(static_cast<int>(width)) << d.id << std::right << std::setw(8)
        << d.words << std::setw(13) << d.highlighted << std::setw(8)
        << (d.rate ? fixed(*d.rate, 4) : std::string("-")) << "\n";
    }
    s << "mean " << fixed(report.summary->mean, 4) << " std " << fixed(report.summary->std, 4)
      << " over " << report.documents.size() << " documents\n";
    s << "band " << fixed(report.band.center, 2) << " +/- " << fixed(report.band.half_width, 2) << ": ";
    if (report.in_band) {
      s << "inside\n";
    } else if (report.summary->mean > report.band.center) {
      s << "OUTSIDE, too many words highlighted; drop broad keywords\n";
    } else {
      s << "OUTSIDE, too few words highlighted; relevant keywords may be missing\n";
    }
    emit(ctx, a.out, s.str());
  }
  return report.in_band ? kOk : kFlagged;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string evidence, documents, format = "text", out;
  int threshold = 90;
  bool case_fold = false;
  unsigned jobs = 1;
};

int cmd_verify(const Context& ctx, const VerifyArgs& a) {
  auto records = load_evidence(a.evidence);
  auto docs = load_documents(a.documents);
  Lexicon lex = ctx.lexicon();

  std::vector<const EvidenceRecord*> checked;
  std::vector<std::string> skipped;
  for (const auto& r : records) {
    if (r.mode == AnswerMode::Direct) {
      skipped.push_back(r.id());
      continue;
    }
    if (!docs.contains(r.paper_id)) {
      throw LoadError(a.documents, 0, "no document " + r.paper_id + ".txt for record " + r.id());
    }
    checked.push_back(&r);
  }

  VerifyOptions options;
  options.match.threshold = a.threshold;
  options.match.case_fold = a.case_fold;
  options.lexicon = &lex;
  std::vector<EvidenceAudit> audits(checked.size());
  detail::parallel_for(checked.size(), a.jobs, [&](std::size_t i) {
    audits[i] = verify_evidence(*checked[i], docs.at(checked[i]->paper_id), options);
  });
  const auto flagged = static_cast<std::size_t>(
      std::count_if(audits.begin(), audits.end(), [](const EvidenceAudit& e) { return e.flagged; }));

  if (a.format == "json") {
    ordered_json body;
    body["threshold"] = a.threshold;
    body["case_fold"] = a.case_fold;
    body["records"] = ordered_json::array();
    for (const auto& audit : audits) {
      ordered_json r;
      r["id"] = audit.record_id;
      r["mean_score"] = audit.mean_score;
      r["flagged"] = audit.flagged;
      r["quotes"] = ordered_json::array();
      for (const auto& q : audit.quotes) {
        ordered_json jq;
        jq["quote"] = q.quote;
        jq["score"] = q.match.score;
        jq["verdict"] = q.match.verdict == Verdict::Pass ? "pass" : "flagged";
        jq["scope"] = std::string(to_string(q.scope));
        jq["start"] = q.match.start;
        jq["end"] = q.match.end;
        jq["matched_text"] = q.match.matched_text;
        r["quotes"].push_back(std::move(jq));
      }
      body["records"].push_back(std::move(r));
    }
    body["skipped"] = skipped;
    body["checked"] = audits.size();
    body["flagged"] = flagged;
    ordered_json meta;
    meta["evidence"] = a.evidence;
    meta["documents"] = a.documents;
    emit(ctx, a.out, report_text("verify", meta, body));
  } else {
    std::ostringstream s;
    for (const auto& audit : audits) {
      s << (audit.flagged ? "FLAGGED " : "PASS    ") << audit.record_id << "  mean "
        << fixed(audit.mean_score, 1) << "\n";
      for (const auto& q : audit.quotes) {
        s << "  " << std::setw(3) << q.match.score << "  \"" << q.quote << "\"\n";
        if (q.match.verdict == Verdict::Flagged) s << "       closest: \"" << q.match.matched_text << "\"\n";
      }
    }
    for (const auto& id : skipped) s << "SKIPPED " << id << "  direct answer, no quotes\n";
    s << audits.size() << " checked, " << flagged << " flagged, " << skipped.size()
      << " skipped (threshold " << a.threshold << ")\n";
    emit(ctx, a.out, s.str());
  }
  return flagged > 0 ? kFlagged : kOk;
}

// compare -------------------------------------------------------------------

struct CompareArgs {
  std::string evidence, sentence_embeddings, format = "text", out;
  bool case_fold = false;
};

ordered_json summary_json(const std::vector<double>& xs) {
  ordered_json j;
  j["n"] = xs.size();
  if (xs.empty()) {
    j["mean"] = nullptr;
    j["std"] = nullptr;
  } else {
    auto ms = mean_std(xs);
    j["mean"] = ms.mean;
    j["std"] = ms.std;
  }
  return j;
}

ordered_json correlation_json(const std::vector<double>& xs, const std::vector<double>& ys) {
  ordered_json j;
  j["n"] = xs.size();
  try {
    auto e = highlight_correlation(xs, ys);
    j["r"] = e.r;
    j["interval_defined"] = e.interval_defined;
    j["lower"] = e.lower;
    j["upper"] = e.upper;
    j["scaled_uncertainty"] = e.scaled_uncertainty;
  } catch (const std::exception& e) {
    j["r"] = nullptr;
    j["reason"] = e.what();
  }
  return j;
}

int cmd_compare(const Context& ctx, const CompareArgs& a) {
  if (ctx.global.vectors.empty() && a.sentence_embeddings.empty()) {
    throw CLI::ValidationError("compare", "needs --vectors, --sentence-embeddings or both");
  }
  auto records = load_evidence(a.evidence);
  VectorStore store = ctx.vectors();
  std::map<std::string, EmbeddingVector> sentences;
  if (!a.sentence_embeddings.empty()) sentences = load_sentence_embeddings(a.sentence_embeddings);

  struct Row {
    std::string id;
    std::optional<double> mean_vector, rescaled, sentence;
    std::optional<double> expert_score;
  };
  std::vector<Row> rows;
  std::size_t skipped = 0;
  for (const auto& r : records) {
    if (!r.expert_answer) {
      ++skipped;
      continue;
    }
    Row row;
    row.id = r.id();
    row.expert_score = r.expert_score;
    if (!store.empty()) {
      try {
        row.mean_vector = mean_vector_similarity(r.model_answer, *r.expert_answer, store,
                                                 {.case_fold = a.case_fold});
        row.rescaled = rescale(*row.mean_vector);
      } catch (const UndefinedSimilarity&) {
      }
    }
    auto m = sentences.find(row.id + ":model");
    auto e = sentences.find(row.id + ":expert");
    if (m != sentences.end() && e != sentences.end()) {
      row.sentence = sentence_embedding_similarity(m->second, e->second);
    }
    rows.push_back(std::move(row));
  }

  std::vector<double> mv, sv, both_mv, both_sv, scored_mv, scored_expert;
  for (const auto& row : rows) {
    if (row.mean_vector) mv.push_back(*row.mean_vector);
    if (row.sentence) sv.push_back(*row.sentence);
    if (row.mean_vector && row.sentence) {
      both_mv.push_back(*row.mean_vector);
      both_sv.push_back(*row.sentence);
    }
    if (row.mean_vector && row.expert_score) {
      scored_mv.push_back(*row.mean_vector);
      scored_expert.push_back(*row.expert_score);
    }
  }

  ordered_json body;
  body["case_fold"] = a.case_fold;
  body["records"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json j;
    j["id"] = row.id;
    j["mean_vector"] = optional_number(row.mean_vector);
    j["rescaled"] = optional_number(row.rescaled);
    j["sentence"] = optional_number(row.sentence);
    body["records"].push_back(std::move(j));
  }
  body["skipped_without_expert_answer"] = skipped;
  body["mean_vector"] = summary_json(mv);
  body["sentence"] = summary_json(sv);
  body["correlation"] = {{"mean_vector_vs_sentence", correlation_json(both_mv, both_sv)},
                         {"mean_vector_vs_expert_score", correlation_json(scored_mv, scored_expert)}};

  if (a.format == "json") {
    ordered_json meta;
    meta["evidence"] = a.evidence;
    meta["vectors"] = ctx.global.vectors;
    meta["sentence_embeddings"] = a.sentence_embeddings;
    emit(ctx, a.out, report_text("compare", meta, body));
    return kOk;
  }
  auto cell = [](const std::optional<double>& v) { return v ? fixed(*v, 4) : std::string("-"); };
  std::size_t width = 6;
  for (const auto& row : rows) width = std::max(width, row.id.size());
  std::ostringstream s;
  s << std::left << std::setw(static_cast<int>(width)) << "record" << std::right << std::setw(13)
    << "mean-vector" << std::setw(10) << "rescaled" << std::setw(10) << "sentence" << "\n";
  for (const auto& row : rows) {
    s << std::left << std::setw(static_cast<int>(width)) << row.id << std::right << std::setw(13)
      << cell(row.mean_vector) << std::setw(10) << cell(row.rescaled) << std::setw(10)
      << cell(row.sentence) << "\n";
  }
  if (skipped > 0) s << "skipped " << skipped << " record(s) without an expert answer\n";
  auto summary_line = [&](const char* name, const std::vector<double>& xs) {
    s << name << ": ";
    if (xs.empty()) {
      s << "no values\n";
      return;
    }
    auto ms = mean_std(xs);
    s << "mean " << fixed(ms.mean, 4) << " std " << fixed(ms.std, 4) << " (n=" << xs.size() << ")\n";
  };
  summary_line("mean-vector", mv);
  summary_line("sentence", sv);
  auto corr_line = [&](const char* name, const ordered_json& j) {
    s << "correlation " << name << ": ";
    if (j["r"].is_null()) {
      s << "undefined (n=" << j["n"].get<std::size_t>() << ")\n";
      return;
    }
    s << "r " << fixed(j["r"].get<double>(), 4);
    if (j["interval_defined"].get<bool>()) {
      s << " [" << fixed(j["lower"].get<double>(), 4) << ", " << fixed(j["upper"].get<double>(), 4) << "]";
    }
    s << " (n=" << j["n"].get<std::size_t>() << ")\n";
  };
  corr_line("mean-vector vs sentence", body["correlation"]["mean_vector_vs_sentence"]);
  if (!scored_mv.empty()) corr_line("mean-vector vs expert score", body["correlation"]["mean_vector_vs_expert_score"]);
  emit(ctx, a.out, s.str());
  return kOk;
}

// screen-stats --------------------------------------------------------------

struct ScreenArgs {
  std::string evidence, format = "text", out;
};

int cmd_screen_stats(const Context& ctx, const ScreenArgs& a) {
  auto records = load_evidence(a.evidence);
  Confusion c;
  std::size_t excluded = 0;
  for (const auto& r : records) {
    if (!r.model_label || !r.expert_label) {
      ++excluded;
      continue;
    }
    const bool predicted = *r.model_label == Label::Relevant;
    const bool actual = *r.expert_label == Label::Relevant;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  auto rates = confusion_rates(c);
  if (a.format == "json") {
    ordered_json body;
    body["tp"] = c.tp;
    body["fp"] = c.fp;
    body["tn"] = c.tn;
    body["fn"] = c.fn;
    body["false_positive_rate"] = optional_number(rates.false_positive_rate);
    body["false_negative_rate"] = optional_number(rates.false_negative_rate);
    body["excluded_without_labels"] = excluded;
    ordered_json meta;
    meta["evidence"] = a.evidence;
    emit(ctx, a.out, report_text("screen-stats", meta, body));
    return kOk;
  }
  auto rate = [](const std::optional<double>& v) { return v ? fixed(*v, 2) : std::string("undefined"); };
  std::ostringstream s;
  s << "tp " << c.tp << "  fp " << c.fp << "  tn " << c.tn << "  fn " << c.fn << "\n";
  s << "false positive rate " << rate(rates.false_positive_rate) << "\n";
  s << "false negative rate " << rate(rates.false_negative_rate) << "\n";
  if (excluded > 0) s << "excluded " << excluded << " record(s) without both labels\n";
  emit(ctx, a.out, s.str());
  return kOk;
}

// serve ---------------------------------------------------------------------

struct ServeArgs {
  std::string config, host = "127.0.0.1", ui_dir;
  int port = 8080;
  unsigned jobs = 1;
};

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted = true; }

int cmd_serve(const Context& ctx, const ServeArgs& a) {
  auto project = load_project_config(a.config);
  GlobalOptions global = ctx.global;
  if (global.lexicon.empty() && project.lexicon) global.lexicon = project.lexicon->string();
  if (global.vectors.empty() && project.vectors) global.vectors = project.vectors->string();
  Context local{global, ctx.out, ctx.err};
  Lexicon lex = local.lexicon();
  ServiceOptions options;
  options.host = a.host;
  options.port = a.port;
  options.jobs = a.jobs;
  if (!a.ui_dir.empty()) options.ui_dir = a.ui_dir;
  CalibrationService service(project, lex, local.vectors(), options);
  int port = service.bind();
  ctx.out << "serving on http://" << a.host << ":" << port << "\n" << std::flush;

  g_interrupted = false;
  auto previous_int = std::signal(SIGINT, on_interrupt);
  auto previous_term = std::signal(SIGTERM, on_interrupt);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done && !g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    service.stop();
  });
  service.listen();
  done = true;
  watcher.join();
  std::signal(SIGINT, previous_int);
  std::signal(SIGTERM, previous_term);
  return kOk;
}

}  // namespace

fs::path default_lexicon_dir() {
  if (const char* env = std::getenv("SLRKIT_WORDNET"); env && *env) return env;
  return SLRKIT_WORDNET_DIR;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audit tools for LLM-assisted systematic literature reviews", "slrkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  GlobalOptions global;
  app.add_option("--lexicon", global.lexicon, "WordNet database directory");
  app.add_option("--vectors", global.vectors, "Word vector file");
  app.add_option("--p-weight", global.p_weight, "Pertainym step weight")->check(CLI::Range(0.0, 1.0));
  app.add_option("--rf-weight", global.rf_weight, "Related-form step weight")->check(CLI::Range(0.0, 1.0));
  app.add_option("--wup-threshold", global.wup_threshold, "Wu-Palmer threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--vec-threshold", global.vec_threshold, "Vector threshold")->check(CLI::Range(0.0, 1.0));

  std::function<int(const Context&)> command;

  HighlightArgs ha;
  auto* highlight_cmd = app.add_subcommand("highlight", "Highlight one document");
  highlight_cmd->add_option("document", ha.document, "Text file (or tagged TSV with --pretagged)")->required();
  highlight_cmd->add_option("keywords", ha.keywords, "Keyword file")->required();
  highlight_cmd->add_option("--format", ha.format, "ansi, html or json")
      ->check(CLI::IsMember({"ansi", "html", "json"}));
  highlight_cmd->add_flag("--explain", ha.explain, "Append one explanation per span");
  highlight_cmd->add_flag("--pretagged", ha.pretagged, "Document is a tagged TSV export");
  highlight_cmd->add_option("--out", ha.out, "Write to a file instead of stdout");
  highlight_cmd->callback([&] { command = [&](const Context& c) { return cmd_highlight(c, ha); }; });

  CalibrateArgs ca;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Highlighting rates over a corpus");
  calibrate_cmd->add_option("corpus", ca.corpus, "Directory of .txt documents")->required();
  calibrate_cmd->add_option("keywords", ca.keywords, "Keyword file")->required();
  calibrate_cmd->add_option("--jobs", ca.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  calibrate_cmd->add_option("--format", ca.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  calibrate_cmd->add_option("--out", ca.out, "Write to a file instead of stdout");
  calibrate_cmd->callback([&] { command = [&](const Context& c) { return cmd_calibrate(c, ca); }; });

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check evidence quotes against their papers");
  verify_cmd->add_option("evidence", va.evidence, "Evidence JSON")->required();
  verify_cmd->add_option("documents", va.documents, "Directory with <paper_id>.txt files")->required();
  verify_cmd->add_option("--threshold", va.threshold, "Flag records whose mean score is below this")
      ->check(CLI::Range(0, 101));
  verify_cmd->add_flag("--case-fold", va.case_fold, "Compare case-insensitively");
  verify_cmd->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  verify_cmd->add_option("--format", va.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--out", va.out, "Write to a file instead of stdout");
  verify_cmd->callback([&] { command = [&](const Context& c) { return cmd_verify(c, va); }; });

  CompareArgs cpa;
  auto* compare_cmd = app.add_subcommand("compare", "Similarity of model and expert answers");
  compare_cmd->add_option("evidence", cpa.evidence, "Evidence JSON")->required();
  compare_cmd->add_option("--sentence-embeddings", cpa.sentence_embeddings, "Precomputed sentence embeddings");
  compare_cmd->add_flag("--case-fold", cpa.case_fold, "Look words up lowercased");
  compare_cmd->add_option("--format", cpa.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  compare_cmd->add_option("--out", cpa.out, "Write to a file instead of stdout");
  compare_cmd->callback([&] { command = [&](const Context& c) { return cmd_compare(c, cpa); }; });

  ScreenArgs sa;
  auto* screen_cmd = app.add_subcommand("screen-stats", "Screening confusion matrix and error rates");
  screen_cmd->add_option("evidence", sa.evidence, "Evidence JSON with labels")->required();
  screen_cmd->add_option("--format", sa.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  screen_cmd->add_option("--out", sa.out, "Write to a file instead of stdout");
  screen_cmd->callback([&] { command = [&](const Context& c) { return cmd_screen_stats(c, sa); }; });

  ServeArgs sv;
  auto* serve_cmd = app.add_subcommand("serve", "Run the calibration service");
  serve_cmd->add_option("--config", sv.config, "Project file")->required();
  serve_cmd->add_option("--port", sv.port, "TCP port, 0 for any free port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", sv.host, "Listen address");
  serve_cmd->add_option("--ui-dir", sv.ui_dir, "Static UI bundle served at /");
  serve_cmd->add_option("--jobs", sv.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  serve_cmd->callback([&] { command = [&](const Context& c) { return cmd_serve(c, sv); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  Context ctx{global, out, err};
  try {
    return command(ctx);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kFailure;
}

}  // namespace slrkit
