#include "docsynth/ocr_client.hpp"

#include <httplib.h>

#include <chrono>
#include <thread>

namespace docsynth {

namespace {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_endpoint(const std::string& endpoint) {
  size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos)
    throw std::invalid_argument("endpoint must look like http://host:port/path");
  size_t path_start = endpoint.find('/', scheme + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

OcrResult external_ocr(const PageImage& img, const OcrClientConfig& config) {
  SplitUrl url = split_endpoint(config.endpoint);
  std::string body = encode_pgm(img);

  httplib::Headers headers;
  if (!config.bearer_token.empty())
    headers.emplace("Authorization", "Bearer " + config.bearer_token);

  int last_status = 0;
  std::string last_error = "connection failed";
  int delay_ms = config.retry_delay_ms;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
    httplib::Client client(url.base);
    client.set_connection_timeout(config.timeout_sec, 0);
    client.set_read_timeout(config.timeout_sec, 0);
    httplib::Result res =
        client.Post(url.path, headers, body, "image/x-portable-graymap");
    if (!res) {
      last_status = 0;
      last_error = "connection to " + url.base + " failed";
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_status = res->status;
      last_error = "OCR service returned status " + std::to_string(res->status);
      continue;
    }
    try {
      return parse_ocr_result(res->body);
    } catch (const std::exception& e) {
      throw OcrProtocolError(std::string("malformed OCR response: ") + e.what());
    }
  }
  throw OcrServiceError(last_status, last_error);
}

}  // namespace docsynth
