#include "tropkit/io.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>

namespace tropkit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_decimal(const std::string& s) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  long exp10 = 0;
  auto e = t.find_first_of("eE");
  if (e != std::string::npos) {
    std::string ex = t.substr(e + 1);
    t = t.substr(0, e);
    bool eneg = !ex.empty() && ex[0] == '-';
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) ex = ex.substr(1);
    if (!all_digits(ex) || ex.size() > 6) throw Error(Errc::Parse, "bad number '" + s + "'");
    exp10 = std::stol(ex) * (eneg ? -1 : 1);
  }
  auto dot = t.find('.');
  std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
  if (ip.empty()) ip = "0";
  if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) throw Error(Errc::Parse, "bad number '" + s + "'");
  mpz_class num(ip + fp, 10);
  exp10 -= static_cast<long>(fp.size());
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 < 0 ? Rational(num, p10) : Rational(num * p10);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string s = trim(raw);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational p = parse_decimal(trim(s.substr(0, slash)));
    Rational q = parse_decimal(trim(s.substr(slash + 1)));
    if (q == 0) throw Error(Errc::Parse, "zero denominator in '" + raw + "'");
    Rational r = p / q;
    r.canonicalize();
    return r;
  }
  return parse_decimal(s);
}

std::string rational_str(const Rational& q) { return q.get_str(); }

json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return static_cast<std::int64_t>(q.get_num().get_si());
  return q.get_str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_number_float()) {
    double d = j.get<double>();
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return parse_decimal(std::string(buf, res.ptr));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(Errc::Parse, "expected a rational number, got " + j.dump());
}

json scalar_to_json(const Scalar& s) {
  if (s.bottom) {
    if (s.tag == Tag::MaxPlus) return "-inf";
    if (s.tag == Tag::MinPlus) return "+inf";
    return 0;
  }
  return rational_to_json(s.v);
}

Scalar parse_scalar(const std::string& token, Tag tag) {
  std::string t = trim(token);
  if (t == "-inf" || t == "⊥") {
    if (tag != Tag::MaxPlus) throw Error(Errc::Parse, std::string("'-inf' is not an element of ") + tag_name(tag));
    return Scalar::zero(tag);
  }
  if (t == "+inf" || t == "inf") {
    if (tag != Tag::MinPlus) throw Error(Errc::Parse, std::string("'+inf' is not an element of ") + tag_name(tag));
    return Scalar::zero(tag);
  }
  return Scalar::of(tag, parse_rational(t));
}

Scalar scalar_from_json(const json& j, Tag tag) {
  if (j.is_string()) return parse_scalar(j.get<std::string>(), tag);
  if (j.is_boolean() && tag == Tag::Boolean) return j.get<bool>() ? Scalar::one(tag) : Scalar::zero(tag);
  return Scalar::of(tag, rational_from_json(j));
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

Vec vec_from_json(const json& j, Tag tag) {
  if (!j.is_array()) throw Error(Errc::Parse, "expected a vector (JSON array)");
  Vec v;
  for (const auto& e : j) v.push_back(scalar_from_json(e, tag));
  return v;
}

json matrix_to_json(const Matrix& M) {
  json j;
  j["semiring"] = tag_name(M.tag);
  j["rows"] = M.rows;
  j["cols"] = M.cols;
  json data = json::array();
  for (std::size_t i = 0; i < M.rows; ++i) data.push_back(vec_to_json(M.row(i)));
  j["data"] = data;
  return j;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "matrix must be a JSON object");
  Tag tag = Tag::MaxPlus;
  if (j.contains("semiring")) tag = tag_from_name(j.at("semiring").get<std::string>());
  if (!j.contains("data") || !j.at("data").is_array()) throw Error(Errc::Parse, "matrix needs a 'data' array of rows");
  const json& data = j.at("data");
  std::size_t rows = data.size();
  std::size_t cols = rows ? data[0].size() : 0;
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != rows) throw Error(Errc::Parse, "'rows' disagrees with data");
  if (j.contains("cols")) {
    std::size_t c = j.at("cols").get<std::size_t>();
    if (rows && c != cols) throw Error(Errc::Parse, "'cols' disagrees with data");
    cols = c;
  }
  Matrix M(tag, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!data[i].is_array() || data[i].size() != cols) throw Error(Errc::Parse, "row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) M(i, k) = scalar_from_json(data[i][k], tag);
  }
  return M;
}

Matrix matrix_from_csv(const std::string& text, Tag tag) {
  std::vector<Vec> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    Vec r;
    std::string tok;
    std::istringstream ls(line);
    while (std::getline(ls, tok, ',')) r.push_back(parse_scalar(tok, tag));
    if (!rows.empty() && r.size() != rows[0].size()) throw Error(Errc::Parse, "ragged CSV matrix");
    rows.push_back(r);
  }
  Matrix M(tag, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < M.cols; ++k) M(i, k) = rows[i][k];
  return M;
}

json interval_matrix_to_json(const IntervalMatrix& M) {
  json j;
  j["semiring"] = tag_name(M.tag);
  j["rows"] = M.rows;
  j["cols"] = M.cols;
  j["lo"] = matrix_to_json(M.lo())["data"];
  j["hi"] = matrix_to_json(M.hi())["data"];
  return j;
}

IntervalMatrix interval_matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) throw Error(Errc::Parse, "interval matrix needs 'lo' and 'hi'");
  json lo = {{"data", j.at("lo")}}, hi = {{"data", j.at("hi")}};
  if (j.contains("semiring")) lo["semiring"] = hi["semiring"] = j.at("semiring");
  return IntervalMatrix(matrix_from_json(lo), matrix_from_json(hi));
}

}  // namespace tropkit
