#include "canesim/jalali.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace canesim {

bool is_gregorian_leap(int year) noexcept
{
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

bool is_valid_gregorian(int year, int month, int day) noexcept
{
    static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12 || day < 1) return false;
    int limit = kDays[static_cast<std::size_t>(month - 1)];
    if (month == 2 && is_gregorian_leap(year)) limit = 29;
    return day <= limit;
}

CivilDate gregorian_to_jalali(int year, int month, int day)
{
    if (year < 1900 || year > 2100)
        throw std::invalid_argument("gregorian_to_jalali: year " + std::to_string(year) + " outside 1900-2100");
    if (!is_valid_gregorian(year, month, day))
        throw std::invalid_argument("gregorian_to_jalali: invalid date " + std::to_string(year) + "-" +
                                    std::to_string(month) + "-" + std::to_string(day));

    static constexpr std::array<long, 12> kBefore{0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    const long gy2 = month > 2 ? year + 1 : year;
    long days = 355666 + 365L * year + (gy2 + 3) / 4 - (gy2 + 99) / 100 + (gy2 + 399) / 400 + day +
                kBefore[static_cast<std::size_t>(month - 1)];
    long jy = -1595 + 33 * (days / 12053);
    days %= 12053;
    jy += 4 * (days / 1461);
    days %= 1461;
    if (days > 365) {
        jy += (days - 1) / 365;
        days = (days - 1) % 365;
    }
    CivilDate out;
    out.year = static_cast<int>(jy);
    if (days < 186) {
        out.month = static_cast<int>(1 + days / 31);
        out.day = static_cast<int>(1 + days % 31);
    } else {
        out.month = static_cast<int>(7 + (days - 186) / 30);
        out.day = static_cast<int>(1 + (days - 186) % 30);
    }
    return out;
}

std::string format_jalali(const CivilDate& d)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d/%02d/%02d", d.year, d.month, d.day);
    return buf;
}

} // namespace canesim
