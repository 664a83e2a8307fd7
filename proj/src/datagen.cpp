#include "edgeboost/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "edgeboost/errors.hpp"

namespace edgeboost {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform/Gaussian draws built directly on the mt19937_64 stream, so the
// generated bytes do not depend on the standard library's distribution
// implementations.
class Rand {
public:
    explicit Rand(std::uint64_t seed) : rng_(seed) {}

    double uniform() {
        return static_cast<double>(rng_() >> 11) * (1.0 / 9007199254740992.0);
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = std::max(uniform(), 1e-300);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    std::uint64_t raw() { return rng_(); }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// First-order autoregressive process with a short burn-in.
class Ar1 {
public:
    Ar1(double phi, double sigma) : phi_(phi), sigma_(sigma) {}

    void burn_in(Rand& rand, int steps) {
        for (int i = 0; i < steps; ++i) step(rand);
    }

    double step(Rand& rand) {
        state_ = phi_ * state_ + sigma_ * rand.gauss();
        return state_;
    }

    double value() const { return state_; }

private:
    double phi_;
    double sigma_;
    double state_ = 0.0;
};

struct Date {
    int year = 2004;
    int month = 3;
    int day = 10;
};

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return kDays[month - 1];
}

void advance_day(Date& d) {
    if (++d.day > days_in_month(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
}

int day_of_year(const Date& d) {
    int doy = d.day;
    for (int m = 1; m < d.month; ++m) doy += days_in_month(d.year, m);
    return doy;
}

// Hourly latent state and the derived column values for one row.
struct Row {
    double co = 0, s1 = 0, nmhc = 0, c6h6 = 0, s2 = 0, nox = 0, s3 = 0;
    double no2 = 0, s4 = 0, s5 = 0, temp = 0, rh = 0, ah = 0;
};

// Marks random bursts until exactly `target` rows are flagged.
void mark_bursts(std::vector<std::uint8_t>& mask, std::size_t target, Rand& rand,
                 std::size_t max_len) {
    const std::size_t n = mask.size();
    if (target > n) target = n;
    std::size_t count = 0;
    while (count < target) {
        std::size_t start = static_cast<std::size_t>(rand.raw() % n);
        double u = rand.uniform();
        std::size_t len = 1 + static_cast<std::size_t>(static_cast<double>(max_len) * u * u);
        for (std::size_t i = start; i < std::min(start + len, n) && count < target; ++i) {
            if (mask[i] == 0) {
                mask[i] = 1;
                ++count;
            }
        }
    }
}

std::string format_number(double v, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    for (char& c : buf) {
        if (c == '.') c = ',';
        if (c == '\0') break;
    }
    return buf;
}

}  // namespace

std::string generate_airquality_csv(const SynthSpec& spec) {
    const std::size_t n = spec.n_rows;
    Rand rand(spec.seed);

    Ar1 ar_traffic(0.92, 0.16);
    Ar1 ar_temp(0.98, 0.45);
    Ar1 ar_rh(0.96, 2.2);
    Ar1 ar_co(0.95, 0.075);
    Ar1 ar_nox(0.93, 0.30);
    Ar1 ar_o3(0.90, 0.50);
    Ar1 ar_no2(0.90, 0.35);
    Ar1 ar_c6(0.92, 0.25);
    Ar1 drift_s1(0.999, 0.02);
    Ar1 drift_s2(0.999, 0.02);
    Ar1 drift_s3(0.999, 0.02);
    Ar1 drift_s4(0.999, 0.02);
    Ar1 drift_s5(0.999, 0.02);
    for (Ar1* p : {&ar_traffic, &ar_temp, &ar_rh, &ar_co, &ar_nox, &ar_o3, &ar_no2, &ar_c6,
                   &drift_s1, &drift_s2, &drift_s3, &drift_s4, &drift_s5}) {
        p->burn_in(rand, 240);
    }

    std::vector<Row> rows(n);
    Date date;           // recording starts 2004-03-10 at 18:00
    int hour = 18;
    int day_index = 0;   // absolute day counter; 2004-03-10 is a Wednesday

    for (std::size_t t = 0; t < n; ++t) {
        const double h = static_cast<double>(hour);
        const int dow = (2 + day_index) % 7;
        const bool weekend = dow >= 5;
        const double doy = static_cast<double>(day_of_year(date));
        const double season = std::cos(2.0 * kPi * (doy - 201.0) / 365.25);

        const double rush = std::exp(-(h - 8.5) * (h - 8.5) / (2.0 * 2.0 * 2.0)) +
                            0.85 * std::exp(-(h - 18.5) * (h - 18.5) / (2.0 * 2.6 * 2.6));
        const double w = weekend ? 0.58 : 1.0;
        const double traffic = std::clamp(
            0.18 + 0.52 * rush * w + 0.06 * w + 0.22 * ar_traffic.step(rand), 0.02, 1.8);

        const double temp = 13.0 + 9.2 * season +
                            (3.6 + 1.4 * season) * std::cos(2.0 * kPi * (h - 15.0) / 24.0) +
                            ar_temp.step(rand);
        const double rh = std::clamp(
            57.0 - 1.3 * (temp - 13.0) + 7.0 * std::cos(2.0 * kPi * (h - 5.0) / 24.0) +
                ar_rh.step(rand),
            9.0, 97.0);
        // Saturation vapor pressure (hPa), scaled the way the source file
        // reports absolute humidity.
        const double svp = 6.112 * std::exp(17.62 * temp / (243.12 + temp));
        const double ah = svp * (rh / 100.0) / 10.0;

        const double cold = std::max(0.0, (12.0 - temp) / 12.0);
        const double sun = (h >= 6.0 && h <= 20.0)
                               ? std::max(0.0, std::sin(kPi * (h - 6.0) / 14.0)) *
                                     (0.75 + 0.35 * season)
                               : 0.0;

        const double co_latent = std::max(
            0.08, 0.42 + 2.1 * traffic + 0.75 * traffic * traffic + 0.55 * traffic * cold +
                      0.85 * ar_co.step(rand));
        const double nox_latent = std::max(
            8.0, 40.0 + 430.0 * traffic * (1.0 + 0.55 * cold) + 85.0 * ar_nox.step(rand));
        const double o3_latent = std::max(
            4.0, 14.0 + 95.0 * sun * (1.0 - 0.45 * std::min(traffic, 1.2)) +
                     13.0 * ar_o3.step(rand));
        const double c6h6_latent = std::max(
            0.1, 0.7 + 7.2 * traffic * traffic + 1.5 * traffic + 1.8 * ar_c6.step(rand));
        const double no2_core = 20.0 + 0.10 * nox_latent * (0.70 + 0.75 * cold) -
                                0.55 * o3_latent * (1.0 - 0.3 * cold) +
                                6.0 * (c6h6_latent - 4.0) +
                                22.0 * std::exp(-(temp - 19.0) * (temp - 19.0) / 40.0) +
                                55.0 * ar_no2.step(rand);
        const double wet_pre = std::max(0.0, (rh - 70.0) / 27.0);
        const double no2_latent = std::max(6.0, no2_core * (1.0 - 0.25 * wet_pre));
        const double nmhc_latent = std::max(
            4.0, 25.0 + 720.0 * traffic * traffic + 160.0 * 0.3 * rand.gauss());

        Row& r = rows[t];
        r.temp = temp;
        r.rh = rh;
        r.ah = ah;
        r.co = std::max(0.1, co_latent * (1.0 + 0.02 * rand.gauss()) + 0.025 * rand.gauss());
        r.nox = std::max(2.0, nox_latent * (1.0 + 0.03 * rand.gauss()) + 3.0 * rand.gauss());
        r.no2 = std::max(2.0, no2_latent * (1.0 + 0.022 * rand.gauss()) + 6.0 * rand.gauss());
        r.c6h6 = std::max(0.1, c6h6_latent * (1.0 + 0.05 * rand.gauss()));
        r.nmhc = std::max(3.0, nmhc_latent * (1.0 + 0.06 * rand.gauss()));

        // Metal-oxide responses: log-shaped curves whose gain swings with
        // temperature and, above ~70% RH, humidity. Recovering the analyzer
        // value therefore takes sensor + T + RH jointly, not a lone curve.
        const double wet = wet_pre;
        const double g1 = (1.0 + 0.022 * (temp - 13.0)) * (1.0 - 0.38 * wet);
        const double g2 = (1.0 + 0.012 * (temp - 13.0)) * (1.0 - 0.15 * wet);
        const double g3 = (1.0 - 0.014 * (temp - 13.0)) * (1.0 + 0.24 * wet);
        const double g4 = (1.0 + 0.026 * (temp - 13.0)) * (1.0 - 0.42 * wet);
        const double g5 = (1.0 + 0.010 * (temp - 13.0)) * (1.0 - 0.12 * wet);

        r.s1 = std::max(400.0, 690.0 + (265.0 * std::log(1.0 + 2.2 * co_latent) +
                                        55.0 * std::log(1.0 + nox_latent / 100.0)) *
                                           g1 +
                                   10.0 * drift_s1.step(rand) + 12.0 * rand.gauss());
        r.s2 = std::max(300.0, 540.0 + 300.0 * std::log(1.0 + c6h6_latent) * g2 +
                                   9.0 * drift_s2.step(rand) + 12.0 * rand.gauss());
        r.s3 = std::max(180.0, 1560.0 - (320.0 * std::log(1.0 + nox_latent / 36.0) +
                                         70.0 * std::log(1.0 + no2_latent / 40.0) -
                                         50.0 * std::log(1.0 + o3_latent / 25.0)) *
                                           g3 +
                                   11.0 * drift_s3.step(rand) + 18.0 * rand.gauss());
        r.s4 = std::max(350.0, 600.0 + (980.0 * no2_latent / (no2_latent + 85.0) -
                                        110.0 * std::log(1.0 + o3_latent / 17.0) +
                                        70.0 * std::log(1.0 + nox_latent / 90.0)) *
                                           g4 +
                                   10.0 * drift_s4.step(rand) + 13.0 * rand.gauss());
        r.s5 = std::max(200.0, 380.0 + (250.0 * std::log(1.0 + o3_latent / 17.0) +
                                        150.0 * std::log(1.0 + traffic) +
                                        30.0 * std::log(1.0 + no2_latent / 40.0)) *
                                           g5 +
                                   11.0 * drift_s5.step(rand) + 14.0 * rand.gauss());

        if (++hour == 24) {
            hour = 0;
            ++day_index;
            advance_day(date);
        }
    }

    // Outage masks. Analyzer downtimes come in multi-hour bursts; the
    // multisensor device drops a whole block of columns when it fails.
    // Counts mirror the published file's missing-value profile.
    auto scaled = [&](std::size_t count_at_full) {
        return std::max<std::size_t>(1, count_at_full * n / 9358);
    };
    std::vector<std::uint8_t> miss_co(n, 0), miss_no2(n, 0), miss_nox(n, 0), miss_dev(n, 0);
    mark_bursts(miss_co, scaled(1683), rand, 36);
    mark_bursts(miss_no2, scaled(1642), rand, 36);
    miss_nox = miss_no2;  // shared analyzer: NOx fails whenever NO2 does
    mark_bursts(miss_dev, scaled(242), rand, 18);
    const std::size_t nmhc_working_prefix = scaled(868);

    std::string out;
    out.reserve(n * 110);
    out += "Date;Time;CO(GT);PT08.S1(CO);NMHC(GT);C6H6(GT);PT08.S2(NMHC);NOx(GT);"
           "PT08.S3(NOx);NO2(GT);PT08.S4(NO2);PT08.S5(O3);T;RH;AH;;\n";

    Date d2;
    int hour2 = 18;
    char datebuf[48];
    for (std::size_t t = 0; t < n; ++t) {
        const Row& r = rows[t];
        const bool dev_out = miss_dev[t] != 0;

        std::snprintf(datebuf, sizeof(datebuf), "%02d/%02d/%04d;%02d.00.00;", d2.day, d2.month,
                      d2.year, hour2);
        out += datebuf;

        out += miss_co[t] ? "-200,0" : format_number(r.co, 1);
        out += ';';
        out += dev_out ? "-200" : format_number(r.s1, 0);
        out += ';';
        out += (t >= nmhc_working_prefix) ? "-200" : format_number(r.nmhc, 0);
        out += ';';
        out += dev_out ? "-200,0" : format_number(r.c6h6, 1);
        out += ';';
        out += dev_out ? "-200" : format_number(r.s2, 0);
        out += ';';
        out += miss_nox[t] ? "-200" : format_number(r.nox, 0);
        out += ';';
        out += dev_out ? "-200" : format_number(r.s3, 0);
        out += ';';
        out += miss_no2[t] ? "-200" : format_number(r.no2, 0);
        out += ';';
        out += dev_out ? "-200" : format_number(r.s4, 0);
        out += ';';
        out += dev_out ? "-200" : format_number(r.s5, 0);
        out += ';';
        out += dev_out ? "-200,0" : format_number(r.temp, 1);
        out += ';';
        out += dev_out ? "-200,0" : format_number(r.rh, 1);
        out += ';';
        out += dev_out ? "-200,0000" : format_number(r.ah, 4);
        out += ";;\n";

        if (++hour2 == 24) {
            hour2 = 0;
            advance_day(d2);
        }
    }

    for (std::size_t i = 0; i < spec.trailing_blank_rows; ++i) {
        out += ";;;;;;;;;;;;;;;;\n";
    }

    return out;
}

void write_airquality_csv(const std::string& path, const SynthSpec& spec) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const std::string csv = generate_airquality_csv(spec);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace edgeboost
