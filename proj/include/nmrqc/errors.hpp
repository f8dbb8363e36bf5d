/* Copyright 2026 The NMRQC Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef NMRQC_ERRORS_HPP
#define NMRQC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nmrqc {

// Exit-code class for the CLI: input/validation problems exit 1,
// resource caps and numerical failures exit 2.
enum class ErrorClass { Input = 1, Resource = 2 };

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message,
        ErrorClass cls = ErrorClass::Input)
      : std::runtime_error(message), code_(std::move(code)), class_(cls) {}

  const std::string& code() const { return code_; }
  ErrorClass error_class() const { return class_; }

 private:
  std::string code_;
  ErrorClass class_;
};

}  // namespace nmrqc

#endif
