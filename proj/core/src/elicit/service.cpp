#include <regex>

#include "json.hpp"
#include "qcn/elicit.hpp"

namespace qcn::elicit {

using nlohmann::json;

namespace {

Response error(int status, const std::string& message) { return {status, json{{"error", message}}.dump()}; }

}  // namespace

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  static const std::regex session_path(R"(^/sessions/([A-Za-z0-9_-]+)(/answer|/network|/history)?/?$)");

  if (path == "/sessions" || path == "/sessions/") {
    if (method != "POST") return error(405, "use POST to create a session");
    try {
      auto session = store_.create(parse_session_config(body));
      std::shared_lock lock(session->mutex);
      return {201, session->summary_json()};
    } catch (const ConfigError& e) {
      return error(400, e.what());
    } catch (const std::exception& e) {
      return error(400, e.what());
    }
  }

  std::smatch m;
  if (!std::regex_match(path, m, session_path)) return error(404, "no such resource: " + path);
  const std::string id = m[1];
  const std::string tail = m[2];

  if (tail.empty() && method == "DELETE") {
    return store_.erase(id) ? Response{200, json{{"deleted", id}}.dump()} : error(404, "unknown session " + id);
  }
  const auto session = store_.find(id);
  if (!session) return error(404, "unknown session " + id);

  if (tail.empty()) {
    if (method != "GET") return error(405, "use GET or DELETE on a session");
    std::shared_lock lock(session->mutex);
    return {200, session->summary_json()};
  }
  if (tail == "/network") {
    if (method != "GET") return error(405, "use GET for the network view");
    std::shared_lock lock(session->mutex);
    return {200, session->network_json()};
  }

  if (tail == "/history") {
    if (method != "GET") return error(405, "use GET for the history");
    std::shared_lock lock(session->mutex);
    return {200, session->history_json()};
  }

  if (method != "POST") return error(405, "use POST to answer");
  std::uint64_t query_id = 0;
  bool yes = false;
  try {
    const json doc = json::parse(body);
    query_id = doc.at("query_id").get<std::uint64_t>();
    yes = doc.at("yes").get<bool>();
  } catch (const json::exception& e) {
    return error(400, std::string("answer body must be {\"query_id\": <id>, \"yes\": <bool>}: ") + e.what());
  }
  std::unique_lock lock(session->mutex);
  try {
    session->answer(query_id, yes);
  } catch (const StaleQuery& e) {
    return error(409, e.what());
  } catch (const NotAwaiting& e) {
    return error(409, e.what());
  }
  store_.snapshot(*session);
  return {200, session->summary_json()};
}

}  // namespace qcn::elicit
