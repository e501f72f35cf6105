#include "slrkit/service.hpp"

#include <fstream>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "httplib.h"
#include "parallel.hpp"
#include "slrkit/calibration.hpp"
#include "slrkit/error.hpp"
#include "slrkit/highlighter.hpp"
#include "slrkit/tagging.hpp"

namespace slrkit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ServiceResponse json_response(int status, const ordered_json& body) {
  return {status, body.dump(2) + "\n"};
}

ServiceResponse error_response(int status, const std::string& message,
                               const std::optional<std::string>& field = std::nullopt) {
  ordered_json j;
  j["error"] = message;
  if (field) j["field"] = *field;
  return json_response(status, j);
}

std::string keyword_key(const KeywordSet& k) { return keywords_to_json(k).dump(); }

// "entities[1]: expected a string" -> "entities[1]"
std::string field_of(const std::string& message) {
  auto colon = message.find(':');
  return colon == std::string::npos ? "$" : message.substr(0, colon);
}

struct BadRequest {
  int status;
  std::string message;
  std::optional<std::string> field;
};

}  // namespace

struct CalibrationService::State {
  const Lexicon& lexicon;
  VectorStore store;
  ServiceOptions options;
  SimilarityConfig config;
  std::filesystem::path history_path;
  std::map<std::string, std::string> documents;

  std::shared_mutex keyword_mutex;
  std::mutex writer_mutex;  // one PUT at a time
  KeywordSet keywords;
  std::vector<ordered_json> history;

  std::mutex memo_mutex;
  std::unordered_map<std::string, std::shared_ptr<const HighlightedDocument>> memo;

  httplib::Server server;
  bool bound = false;

  State(const Lexicon& lex, VectorStore s, ServiceOptions o)
      : lexicon(lex), store(std::move(s)), options(std::move(o)) {}

  KeywordSet current_keywords() {
    std::shared_lock lock(keyword_mutex);
    return keywords;
  }

  HighlightedDocument run(const std::string& text, const KeywordSet& k) const {
    return highlight(tag(text, lexicon), k, store, lexicon, config);
  }

  std::shared_ptr<const HighlightedDocument> document_highlight(const std::string& id,
                                                                const KeywordSet& k) {
    std::string key = id + '\n' + keyword_key(k);
    {
      std::lock_guard lock(memo_mutex);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    auto h = std::make_shared<const HighlightedDocument>(run(documents.at(id), k));
    std::lock_guard lock(memo_mutex);
    if (memo.size() >= options.memo_capacity) memo.clear();
    memo.emplace(std::move(key), h);
    return h;
  }

  CalibrationReport stats(const KeywordSet& k) {
    std::vector<const std::string*> ids;
    for (const auto& entry : documents) ids.push_back(&entry.first);
    std::vector<DocumentRate> rates(ids.size());
    detail::parallel_for(ids.size(), options.jobs, [&](std::size_t i) {
      rates[i] = document_rate(*ids[i], *document_highlight(*ids[i], k));
    });
    return summarize_rates(std::move(rates));
  }

  void load_history() {
    std::ifstream in(history_path);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        auto entry = ordered_json::parse(line);
        KeywordSet k = keywords_from_json(json::parse(entry.at("keywords").dump()));
        keywords = std::move(k);
        history.push_back(std::move(entry));
      } catch (const std::exception& e) {
        warn(history_path.string() + ":" + std::to_string(lineno) + ": skipping history entry: " + e.what());
      }
    }
  }

  void append_history(const ordered_json& entry) {
    std::ofstream out(history_path, std::ios::app);
    if (!out) throw Error("cannot append to " + history_path.string());
    out << entry.dump() << "\n";
  }

  KeywordSet parse_keywords(const json& j) {
    KeywordSet k;
    try {
      k = keywords_from_json(j);
    } catch (const std::invalid_argument& e) {
      throw BadRequest{400, e.what(), field_of(e.what())};
    }
    canonicalize(k, &lexicon);
    return k;
  }

  ServiceResponse get_documents() {
    ordered_json list = ordered_json::array();
    for (const auto& [id, text] : documents) {
      list.push_back({{"id", id}, {"name", id + ".txt"}, {"bytes", text.size()}});
    }
    return json_response(200, {{"documents", list}});
  }

  ServiceResponse get_document(const std::string& id) {
    auto it = documents.find(id);
    if (it == documents.end()) return error_response(404, "unknown document '" + id + "'");
    return json_response(200, {{"id", id}, {"text", it->second}});
  }

  ServiceResponse put_keywords(std::string_view body) {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      return error_response(400, std::string("invalid JSON: ") + e.what(), "$");
    }
    KeywordSet k = parse_keywords(j);
    if (k.empty()) return error_response(400, "$: keyword set has no keywords", "$");

    std::lock_guard writer(writer_mutex);
    auto report = stats(k);
    ordered_json entry;
    entry["timestamp"] = utc_timestamp();
    entry["keywords"] = keywords_to_json(k);
    entry["mean_rate"] = report.summary ? ordered_json(report.summary->mean) : ordered_json(nullptr);
    append_history(entry);
    std::size_t length;
    {
      std::unique_lock lock(keyword_mutex);
      keywords = k;
      history.push_back(entry);
      length = history.size();
    }
    ordered_json out;
    out["keywords"] = keywords_to_json(k);
    out["mean_rate"] = entry["mean_rate"];
    out["history_length"] = length;
    return json_response(200, out);
  }

  ServiceResponse get_history() {
    std::shared_lock lock(keyword_mutex);
    ordered_json list = ordered_json::array();
    for (const auto& e : history) list.push_back(e);
    return json_response(200, {{"entries", list}});
  }

  ServiceResponse post_highlight(std::string_view body) {
    if (body.size() > options.max_text_bytes + 65536) {
      return error_response(413, "request body exceeds the size limit");
    }
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      return error_response(400, std::string("invalid JSON: ") + e.what(), "$");
    }
    if (!j.is_object()) return error_response(400, "$: expected an object", "$");
    const bool has_id = j.contains("document_id");
    const bool has_text = j.contains("text");
    if (has_id == has_text) {
      return error_response(400, "exactly one of 'document_id' and 'text' is required", "$");
    }
    KeywordSet k = current_keywords();
    if (auto it = j.find("keywords"); it != j.end()) {
      try {
        k = parse_keywords(*it);
      } catch (BadRequest& bad) {
        bad.message = "keywords." + bad.message;
        bad.field = "keywords." + bad.field.value_or("$");
        throw;
      }
    }
    if (has_id) {
      if (!j["document_id"].is_string()) {
        return error_response(400, "document_id: expected a string", "document_id");
      }
      auto id = j["document_id"].get<std::string>();
      if (!documents.contains(id)) return error_response(404, "unknown document '" + id + "'");
      return {200, render(*document_highlight(id, k), RenderFormat::Json)};
    }
    if (!j["text"].is_string()) return error_response(400, "text: expected a string", "text");
    const auto& text = j["text"].get_ref<const std::string&>();
    if (text.size() > options.max_text_bytes) {
      return error_response(413, "text exceeds " + std::to_string(options.max_text_bytes) + " bytes");
    }
    return {200, render(run(text, k), RenderFormat::Json)};
  }

  ServiceResponse get_stats() {
    auto report = stats(current_keywords());
    auto j = calibration_to_json(report);
    if (documents.empty()) j["warning"] = "corpus is empty";
    return json_response(200, j);
  }

  ServiceResponse get_health() {
    auto k = current_keywords();
    ordered_json j;
    j["status"] = "ok";
    j["documents"] = documents.size();
    j["keywords"] = k.size();
    return json_response(200, j);
  }
};

CalibrationService::CalibrationService(const ProjectConfig& project, const Lexicon& lexicon,
                                       VectorStore store, ServiceOptions options)
    : state_(std::make_unique<State>(lexicon, std::move(store), std::move(options))) {
  auto& s = *state_;
  auto file = load_keyword_file(project.keywords, &lexicon);
  s.keywords = std::move(file.keywords);
  s.config = project.similarity.value_or(file.config);
  s.documents = load_documents(project.documents);
  if (s.documents.empty()) warn(project.documents.string() + ": corpus has no .txt documents");
  s.history_path = project.history;
  s.load_history();
  if (s.options.ui_dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(*s.options.ui_dir, ec)) {
      throw LoadError(*s.options.ui_dir, 0, "UI directory not found");
    }
  }
}

CalibrationService::~CalibrationService() { stop(); }

ServiceResponse CalibrationService::handle(std::string_view method, std::string_view path,
                                           std::string_view body) {
  auto& s = *state_;
  const std::string p(path);
  auto route = [&](std::string_view m, std::function<ServiceResponse()> f) -> std::optional<ServiceResponse> {
    if (method != m) return error_response(405, "method " + std::string(method) + " not allowed on " + p);
    return f();
  };
  try {
    std::optional<ServiceResponse> r;
    if (p == "/api/health") r = route("GET", [&] { return s.get_health(); });
    else if (p == "/api/documents") r = route("GET", [&] { return s.get_documents(); });
    else if (p.starts_with("/api/documents/")) {
      auto id = httplib::detail::decode_url(p.substr(15), false);
      r = route("GET", [&] { return s.get_document(id); });
    } else if (p == "/api/keywords") {
      if (method == "PUT") r = s.put_keywords(body);
      else r = route("GET", [&] { return json_response(200, keywords_to_json(s.current_keywords())); });
    } else if (p == "/api/history") r = route("GET", [&] { return s.get_history(); });
    else if (p == "/api/highlight") r = route("POST", [&] { return s.post_highlight(body); });
    else if (p == "/api/stats") r = route("GET", [&] { return s.get_stats(); });
    else r = error_response(404, "no route for " + p);
    return *r;
  } catch (const BadRequest& bad) {
    return error_response(bad.status, bad.message, bad.field);
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

int CalibrationService::bind() {
  auto& s = *state_;
  if (s.options.ui_dir) s.server.set_mount_point("/", s.options.ui_dir->string());
  // SO_REUSEADDR only: the library default adds SO_REUSEPORT, which lets a
  // second server share a busy port.
  s.server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  s.server.set_payload_max_length(s.options.max_text_bytes * 2 + 65536);
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    auto r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  s.server.Get(".*", forward);
  s.server.Put(".*", forward);
  s.server.Post(".*", forward);
  s.server.Delete(".*", forward);
  int port = s.options.port;
  if (port == 0) {
    port = s.server.bind_to_any_port(s.options.host);
    if (port < 0) throw Error("cannot bind " + s.options.host);
  } else if (!s.server.bind_to_port(s.options.host, port)) {
    throw Error("cannot bind " + s.options.host + ":" + std::to_string(port));
  }
  s.bound = true;
  return port;
}

void CalibrationService::listen() {
  if (!state_->bound) throw std::logic_error("listen() before bind()");
  state_->server.listen_after_bind();
}

void CalibrationService::stop() {
  if (state_ && state_->bound) state_->server.stop();
}

}  // namespace slrkit
