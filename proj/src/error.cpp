#include "riccati_lie/error.hpp"

namespace riccati_lie {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::domain: return "domain";
        case ErrorKind::genericity: return "genericity";
        case ErrorKind::branch: return "branch";
        case ErrorKind::numeric: return "numeric";
        case ErrorKind::range: return "range";
        case ErrorKind::contract: return "contract";
    }
    return "unknown";
}

}  // namespace riccati_lie
