#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <json.hpp>

#include "sheetcomp/error.hpp"
#include "sheetcomp/llm_client.hpp"

namespace sheetcomp {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint '" + url + "' has no scheme");
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https")
    throw ConfigError("endpoint scheme must be http or https, got '" + scheme + "'");
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttpLlmClient final : public LlmClient {
 public:
  explicit HttpLlmClient(const HttpClientOptions& options)
      : options_(options), url_(split_url(options.endpoint)), client_(url_.origin) {
    auto secs = static_cast<time_t>(options.timeout.count());
    client_.set_connection_timeout(secs, 0);
    client_.set_read_timeout(secs, 0);
    client_.set_write_timeout(secs, 0);
  }

  std::string complete(const LlmRequest& request) override {
    nlohmann::json body = {{"prompt", request.prompt},
                           {"temperature", request.temperature},
                           {"max_tokens", request.max_tokens},
                           {"top_p", request.top_p}};
    if (!options_.model.empty()) body["model"] = options_.model;

    httplib::Headers headers;
    if (!options_.auth_token.empty())
      headers.emplace("Authorization", "Bearer " + options_.auth_token);

    auto res = client_.Post(url_.path, headers, body.dump(), "application/json");
    if (!res)
      throw TransportError("request to " + options_.endpoint + " failed: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
      throw TransportError("endpoint returned HTTP " + std::to_string(res->status));
    if (res->status < 200 || res->status >= 300)
      throw PipelineError("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body);

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
      throw PipelineError(std::string("endpoint reply is not JSON: ") + e.what());
    }
    auto it = reply.find("text");
    if (it == reply.end() || !it->is_string()) throw PipelineError("endpoint reply has no string 'text' field");
    return it->get<std::string>();
  }

 private:
  HttpClientOptions options_;
  SplitUrl url_;
  httplib::Client client_;
};

}  // namespace

std::unique_ptr<LlmClient> make_http_client(const HttpClientOptions& options) {
  return std::make_unique<HttpLlmClient>(options);
}

}  // namespace sheetcomp
