#include "orbitwa/rational.hpp"

#include <algorithm>
#include <cctype>

#include "orbitwa/error.hpp"

namespace orbitwa
{

namespace
{

bool all_digits(std::string_view s)
{
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

[[noreturn]] void reject(std::string_view text)
{
  throw InvalidInput("malformed rational '" + std::string(text) + "'");
}

} // anonymous namespace

Rational parse_rational(std::string_view text)
{
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      reject(text);
    mpz_class d(std::string(den), 10);
    if (d == 0)
      throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      reject(text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    std::string digits = std::string(whole) + std::string(frac);
    result = Rational(mpz_class(digits, 10), scale);
    result.canonicalize();
  } else {
    if (!all_digits(body))
      reject(text);
    result = Rational(mpz_class(std::string(body), 10));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(Rational const &q)
{
  return q.get_str(10);
}

std::string to_decimal_string(Rational const &q)
{
  if (is_integer(q))
    return q.get_num().get_str(10);

  mpz_class den = q.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1)
    return to_string(q);

  unsigned places = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = q.get_num() * scale / q.get_den();

  bool negative = scaled < 0;
  std::string digits = mpz_class(abs(scaled)).get_str(10);
  if (digits.size() <= places)
    digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

} // namespace orbitwa
