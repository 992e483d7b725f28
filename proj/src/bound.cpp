#include "capbound/bound.hpp"

#include <sstream>

namespace capbound {

std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::Upper: return "upper";
        case BoundKind::Lower: return "lower";
        case BoundKind::Exact: return "exact";
        case BoundKind::NotApplicable: return "n/a";
    }
    return "?";
}

std::string Bound::describe(int indent) const {
    std::ostringstream os;
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    os << pad << rule;
    if (!detail.empty()) os << " [" << detail << "]";
    os << ": " << to_string(kind);
    if (applicable()) {
        if (std::isfinite(value)) {
            os.precision(15);
            os << " " << value;
        } else {
            os << " +inf";
        }
    }
    for (const auto& n : notes) os << "\n" << pad << "  ! " << n;
    os << "\n";
    for (const auto& c : inputs) os << c.describe(indent + 1);
    return os.str();
}

}  // namespace capbound
