#include "ctxkit/rational.hpp"

#include "ctxkit/errors.hpp"

namespace ctxkit {

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw input_error("empty rational literal");
    for (char c : text) {
        if (!(c == '/' || c == '-' || c == '+' || (c >= '0' && c <= '9')))
            throw input_error("bad rational literal: '" + text + "'");
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw input_error("bad rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw input_error("zero denominator in rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace ctxkit
