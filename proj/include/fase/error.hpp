#ifndef FASE_ERROR_HPP
#define FASE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fase {

// Error codes double as the CLI exit-code taxonomy:
//   syntax -> 2, validation -> 3, not-response-process -> 4,
//   catastrophic-present / unbalanced-cycle -> 5,
//   internal-inconsistency -> 6, state-cap / trace-cap -> 7.
class FaseError : public std::runtime_error {
public:
    FaseError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace fase

#endif
