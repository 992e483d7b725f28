#include "capbound/angle.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace capbound {

Angle Angle::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) throw DomainError("empty angle");

    double scale = 1.0;
    if (text.size() >= 3 && text.substr(text.size() - 3) == "deg") {
        scale = kPi / 180.0;
        text.remove_suffix(3);
    } else if (text.size() >= 3 && text.substr(text.size() - 3) == "rad") {
        text.remove_suffix(3);
    } else if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        scale = kPi;
        text.remove_suffix(2);
    }
    if (text.empty()) throw DomainError("angle has unit but no value");

    std::string buf(text);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str() || *end != '\0') {
        throw DomainError("cannot parse angle value: '" + buf + "'");
    }
    return Angle(v * scale);
}

std::string Angle::format() const {
    std::ostringstream os;
    os.precision(12);
    os << rad_ << "rad";
    return os.str();
}

}  // namespace capbound
