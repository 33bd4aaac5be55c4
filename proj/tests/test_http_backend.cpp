// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mzgen/http_backend.hpp"

using namespace mzgen;
using nlohmann::json;

TEST_CASE("completion request body carries the full classic field set") {
  GenerationParams params = GenerationParams::generation_defaults("some-model");
  json body = completion_request_body("some-model", "the prompt", params);
  CHECK(body.at("model") == "some-model");
  CHECK(body.at("prompt") == "the prompt");
  CHECK(body.at("temperature") == 0.0);
  CHECK(body.at("max_tokens") == 200);
  CHECK(body.at("top_p") == 1.0);
  CHECK(body.at("frequency_penalty") == 0.0);
  CHECK(body.at("presence_penalty") == 0.0);
  CHECK(body.at("stop") == json::array({"Bot:", "Me:"}));
}

TEST_CASE("edit request body has no sampling extras") {
  GenerationParams params = GenerationParams::edit_defaults("edit-model");
  json body = edit_request_body("edit-model", "input text", "fix it", params);
  CHECK(body.at("model") == "edit-model");
  CHECK(body.at("input") == "input text");
  CHECK(body.at("instruction") == "fix it");
  CHECK(body.at("temperature") == 0.0);
  CHECK(body.at("top_p") == 1.0);
  CHECK(!body.contains("max_tokens"));
  CHECK(!body.contains("stop"));
}

namespace {

// Minimal in-process completions/edits service for hermetic adapter tests.
class FakeService {
 public:
  FakeService() {
    server_.Post("/v1/completions", [this](const httplib::Request& req,
                                           httplib::Response& res) {
      last_completion_body = json::parse(req.body);
      auth_header = req.get_header_value("Authorization");
      res.set_content(json{{"choices", json::array({{{"text", completion_text}}})},
                           {"usage",
                            {{"prompt_tokens", 111}, {"completion_tokens", 22}}}}
                          .dump(),
                      "application/json");
    });
    server_.Post("/v1/edits", [this](const httplib::Request& req,
                                     httplib::Response& res) {
      last_edit_body = json::parse(req.body);
      json reply{{"choices", json::array({{{"text", edit_text}}})}};
      if (report_usage)
        reply["usage"] = {{"prompt_tokens", 33}, {"completion_tokens", 44}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1";
  }

  json last_completion_body;
  json last_edit_body;
  std::string auth_header;
  std::string completion_text = "var int: x;\nsolve satisfy;";
  std::string edit_text = "% edited\nvar int: x;\nsolve satisfy;";
  bool report_usage = true;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("http adapter speaks the completions wire shape") {
  FakeService service;
  setenv("MZGEN_TEST_KEY", "sk-test-123", 1);

  HttpBackendConfig config;
  config.endpoint_url = service.base_url();
  config.generate_model = "gen-model";
  config.edit_model = "edit-model";
  config.api_key_env = "MZGEN_TEST_KEY";
  HttpBackend backend(config);

  GenerationParams params = GenerationParams::generation_defaults();
  BackendResult result = backend.complete(PromptText{"a prompt\nBot:"}, params);

  CHECK(result.text == service.completion_text);
  CHECK(result.prompt_tokens == 111);
  CHECK(result.completion_tokens == 22);
  CHECK(service.last_completion_body.at("model") == "gen-model");
  CHECK(service.last_completion_body.at("prompt") == "a prompt\nBot:");
  CHECK(service.last_completion_body.at("temperature") == 0.0);
  CHECK(service.last_completion_body.at("max_tokens") == 200);
  CHECK(service.last_completion_body.at("stop") == json::array({"Bot:", "Me:"}));
  CHECK(service.auth_header == "Bearer sk-test-123");
}

TEST_CASE("http adapter sends edit instructions bit for bit") {
  FakeService service;
  HttpBackendConfig config;
  config.endpoint_url = service.base_url();
  config.edit_model = "edit-model";
  HttpBackend backend(config);

  const std::string instruction =
      "Me: Fix the minizinc code. The Error code is undefined identifier `q` Bot:";
  BackendResult result = backend.edit("var int: x;", RepairInstruction{instruction},
                                      GenerationParams::edit_defaults());
  CHECK(result.text == service.edit_text);
  CHECK(result.prompt_tokens == 33);
  CHECK(result.completion_tokens == 44);
  CHECK(service.last_edit_body.at("instruction") == instruction);
  CHECK(service.last_edit_body.at("input") == "var int: x;");
  CHECK(!service.last_edit_body.contains("max_tokens"));
}

TEST_CASE("http adapter falls back to approximate token counts") {
  FakeService service;
  service.report_usage = false;
  HttpBackendConfig config;
  config.endpoint_url = service.base_url();
  HttpBackend backend(config);

  BackendResult result = backend.edit("var int: x;", RepairInstruction{"fix"},
                                      GenerationParams::edit_defaults());
  CHECK(result.prompt_tokens == approx_token_count("var int: x;fix"));
  CHECK(result.completion_tokens == approx_token_count(service.edit_text));
}

TEST_CASE("edit emulation over completions concatenates input and instruction") {
  FakeService service;
  HttpBackendConfig config;
  config.endpoint_url = service.base_url();
  config.generate_model = "gen-model";
  config.edit_model = "edit-model";
  config.edit_via_completions = true;
  HttpBackend backend(config);

  backend.edit("var int: x;", RepairInstruction{"Me: fix Bot:"},
               GenerationParams::edit_defaults());
  CHECK(service.last_completion_body.at("model") == "edit-model");
  CHECK(service.last_completion_body.at("prompt") == "var int: x;\nMe: fix Bot:");
}

TEST_CASE("non-2xx responses surface as refusals, not retries") {
  FakeService service;
  HttpBackendConfig config;
  config.endpoint_url = service.base_url();
  HttpBackend backend(config);

  // Point the edits path at the refusing endpoint via a bad base path.
  HttpBackendConfig refusing = config;
  refusing.endpoint_url = service.base_url() + "/nope";
  HttpBackend refused(refusing);
  try {
    refused.complete(PromptText{"p"}, GenerationParams::generation_defaults());
    FAIL("expected BackendError");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendErrorKind::Refusal);
  }
}

TEST_CASE("transport failures surface as errors") {
  HttpBackendConfig config;
  config.endpoint_url = "http://127.0.0.1:1";  // nothing listens here
  config.timeout_ms = 2000;
  HttpBackend backend(config);
  try {
    backend.complete(PromptText{"p"}, GenerationParams::generation_defaults());
    FAIL("expected BackendError");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendErrorKind::Transport);
  }
}

TEST_CASE("https endpoints are rejected with a clear transport error") {
  HttpBackendConfig config;
  config.endpoint_url = "https://api.example.com/v1";
  HttpBackend backend(config);
  CHECK_THROWS_AS(backend.complete(PromptText{"p"}, {}), BackendError);
}
