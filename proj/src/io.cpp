#include "ultra/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ultra {

namespace {

using nlohmann::json;

Rational read_rational(const json& node, const char* what) {
    if (!node.is_object() || !node.contains("num") || !node.contains("den"))
        throw FileFormatError(std::string(what) + ": expected {\"num\": int, \"den\": int}");
    const json& num = node.at("num");
    const json& den = node.at("den");
    if (!num.is_number_integer() || !den.is_number_integer())
        throw FileFormatError(std::string(what) + ": num and den must be integers (no floats in function files)");
    auto d = den.get<std::int64_t>();
    if (d == 0) throw FileFormatError(std::string(what) + ": zero denominator");
    Rational r(Integer(static_cast<long>(num.get<std::int64_t>())), Integer(static_cast<long>(d)));
    r.canonicalize();
    return r;
}

json write_rational(const Rational& r) {
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw std::invalid_argument("write_function_json: value " + r.get_str() + " does not fit in 64 bits");
    return json{{"num", r.get_num().get_si()}, {"den", r.get_den().get_si()}};
}

Rational rational_part(const Scalar& s) {
    if (!s.is_exact() || !s.exact().is_rational())
        throw std::invalid_argument("write_function_json: function files hold rational values only");
    return s.exact().a();
}

int read_int(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_number_integer())
        throw FileFormatError(std::string("function file: missing integer field \"") + key + "\"");
    return doc.at(key).get<int>();
}

}  // namespace

TestFunction parse_function_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileFormatError(std::string("function file: ") + e.what());
    }
    if (!doc.is_object()) throw FileFormatError("function file: top level must be an object");
    const int p = read_int(doc, "p");
    const int degree = read_int(doc, "degree");
    const int m = read_int(doc, "support_level");
    const int k = read_int(doc, "constancy_level");
    if (p < 2 || degree < 1) throw FileFormatError("function file: need p >= 2 and degree >= 1");
    if (k < -m) throw FileFormatError("function file: constancy_level must be >= -m");
    FieldParams fp;
    try {
        fp = FieldParams::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(degree));
    } catch (const std::exception& e) {
        throw FileFormatError(std::string("function file: ") + e.what());
    }
    const int support = -m;
    const std::size_t expected = coset_count(fp, support, k);
    if (!doc.contains("values") || !doc.at("values").is_array())
        throw FileFormatError("function file: missing \"values\" array");
    const json& records = doc.at("values");
    if (records.size() != expected)
        throw FileFormatError("function file: table has " + std::to_string(records.size()) +
                              " entries, expected p^(n(m+k)) = " + std::to_string(expected));

    std::vector<Complex> values(expected);
    std::vector<bool> seen(expected, false);
    for (std::size_t r = 0; r < records.size(); ++r) {
        const json& rec = records[r];
        const std::string where = "function file: record " + std::to_string(r);
        if (!rec.is_object() || !rec.contains("digits") || !rec.at("digits").is_array())
            throw FileFormatError(where + ": missing \"digits\"");
        const json& digits = rec.at("digits");
        if (digits.size() != fp.n) throw FileFormatError(where + ": expected " + std::to_string(fp.n) + " digit arrays");
        CosetAddress address{support, k, {}};
        for (const json& axis : digits) {
            if (!axis.is_array() || axis.size() != static_cast<std::size_t>(k + m))
                throw FileFormatError(where + ": each digit array needs m + k = " + std::to_string(k + m) + " entries");
            std::vector<std::uint32_t> d;
            for (const json& a : axis) {
                if (!a.is_number_integer() || a.get<std::int64_t>() < 0 || a.get<std::int64_t>() >= p)
                    throw FileFormatError(where + ": digit out of range [0, " + std::to_string(p) + ")");
                d.push_back(static_cast<std::uint32_t>(a.get<std::int64_t>()));
            }
            address.digits.push_back(std::move(d));
        }
        std::size_t index = coset_index(address.representative(fp), fp, support, k);
        if (seen[index]) throw FileFormatError(where + ": duplicate coset");
        seen[index] = true;
        Rational re = rec.contains("re") ? read_rational(rec.at("re"), (where + " re").c_str()) : Rational(0);
        Rational im = rec.contains("im") ? read_rational(rec.at("im"), (where + " im").c_str()) : Rational(0);
        values[index] = Complex(Scalar(re), Scalar(im));
    }
    return TestFunction(fp, support, k, std::move(values));
}

TestFunction parse_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open function file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_function_json(buffer.str());
}

std::string write_function_json(const TestFunction& f) {
    const FieldParams& fp = f.field();
    const int support = f.support_level();
    const int k = f.constancy_level();
    json records = json::array();
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        Point x = coset_representative(i, fp, support, k);
        CosetAddress address = CosetAddress::of(x, support, k);
        records.push_back(json{{"digits", address.digits},
                               {"re", write_rational(rational_part(f.values()[i].re))},
                               {"im", write_rational(rational_part(f.values()[i].im))}});
    }
    json doc{{"p", fp.p}, {"degree", fp.n}, {"support_level", f.m()}, {"constancy_level", k}, {"values", records}};
    return doc.dump(2) + "\n";
}

void write_function_file(const TestFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FileFormatError("cannot write function file " + path);
    out << write_function_json(f);
}

}  // namespace ultra
