#pragma once

#include <stdexcept>
#include <string>

#include "docsynth/image.hpp"
#include "docsynth/ocr.hpp"

namespace docsynth {

// Non-2xx response after all retries; status 0 means the connection failed.
class OcrServiceError : public std::runtime_error {
 public:
  OcrServiceError(int status_code, const std::string& message)
      : std::runtime_error(message), status(status_code) {}
  int status;
};

// 2xx response whose body does not match the documented schema.
class OcrProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OcrClientConfig {
  std::string endpoint;      // http://host:port/path
  std::string bearer_token;  // sent as "Authorization: Bearer ..." when set
  int max_retries = 3;       // additional attempts after the first
  int retry_delay_ms = 200;  // doubled after every failed attempt
  int timeout_sec = 30;
};

// POSTs the page as raw PGM bytes (Content-Type: image/x-portable-graymap)
// and parses the {"lines": [{"text", "bbox"}]} response. Transient failures
// are retried with exponential backoff.
OcrResult external_ocr(const PageImage& img, const OcrClientConfig& config);

}  // namespace docsynth
