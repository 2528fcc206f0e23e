#include "liftcoc/rational.hpp"

#include <stdexcept>

namespace liftcoc {

std::string rat_str(const Rat &q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_parse(const std::string &s) {
    if (s.empty())
        throw std::invalid_argument("empty rational");
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

} // namespace liftcoc
