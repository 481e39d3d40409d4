#pragma once

#include <string>

namespace canesim {

struct CivilDate {
    int year = 0;
    int month = 0;
    int day = 0;

    friend constexpr auto operator<=>(const CivilDate&, const CivilDate&) = default;
};

bool is_gregorian_leap(int year) noexcept;
bool is_valid_gregorian(int year, int month, int day) noexcept;

// Arithmetic conversion on the 33-year cycle. Accepts Gregorian years
// 1900-2100; anything else, or an invalid date, throws std::invalid_argument.
CivilDate gregorian_to_jalali(int year, int month, int day);

// "1403/01/01"
std::string format_jalali(const CivilDate& d);

} // namespace canesim
