#pragma once
#include <stdexcept>
#include <string>

namespace algres {

// Process exit codes shared by the library and the CLI.
enum class Status : int { ok = 0, mismatch = 1, input = 2, bound = 3 };

class Error : public std::runtime_error {
public:
    Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
    Status status() const { return status_; }

private:
    Status status_;
};

struct InputError : Error {
    explicit InputError(const std::string& w) : Error(Status::input, w) {}
};

struct BoundError : Error {
    explicit BoundError(const std::string& w) : Error(Status::bound, w) {}
};

// Broken internal invariants and failed load-time identities.
struct CheckError : Error {
    explicit CheckError(const std::string& w) : Error(Status::mismatch, w) {}
};

} // namespace algres
