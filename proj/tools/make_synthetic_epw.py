#!/usr/bin/env python3
"""Generate the bundled synthetic TMY-style EPW files.

Six climates patterned on the ASHRAE zones of Houston (2A), Phoenix (2B),
Atlanta (3A), Los Angeles (3B coastal), Las Vegas (3B desert) and
San Francisco (3C). The series are smooth seasonal/diurnal models with
deterministic multi-day weather waves, not measured data; they are meant to
be plausible drivers for the simulation engine, with each climate's character
(hot-dry, hot-humid, mild-marine, ...) preserved.

Usage: python3 tools/make_synthetic_epw.py [out_dir]
"""

import math
import os
import sys

DAYS_IN_MONTH = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]

CLIMATES = {
    # label: (lat, lon, tz, elev_m, t_mean, t_season_amp, t_diurnal_amp,
    #         rh_mean, clearness, wind_mean, wind_dir, phase)
    "houston_2a":       (29.99,  -95.37, -6.0,  30.0, 21.0, 8.0, 4.5, 76.0, 0.52, 3.6, 150.0, 0.0),
    "phoenix_2b":       (33.43, -112.02, -7.0, 337.0, 23.0, 8.0, 7.0, 34.0, 0.76, 3.1,  95.0, 1.3),
    "atlanta_3a":       (33.64,  -84.43, -5.0, 313.0, 17.0, 9.0, 5.5, 69.0, 0.55, 4.1, 300.0, 2.1),
    "los_angeles_3b":   (33.94, -118.41, -8.0,  30.0, 17.5, 4.0, 3.5, 71.0, 0.68, 3.4, 250.0, 3.0),
    "las_vegas_3b":     (36.08, -115.16, -8.0, 664.0, 20.0, 9.5, 7.5, 29.0, 0.78, 4.2, 210.0, 4.2),
    "san_francisco_3c": (37.62, -122.40, -8.0,   5.0, 14.0, 3.5, 3.0, 74.0, 0.62, 5.3, 290.0, 5.1),
}


def solar_altitude(lat, lon, tz, doy, hour_local):
    # +1.25 d phase keeps the mean-year series on current equinox timing
    gamma = 2.0 * math.pi * (doy + 0.25 + (hour_local - 12.0) / 24.0) / 365.0
    decl = (0.006918 - 0.399912 * math.cos(gamma) + 0.070257 * math.sin(gamma)
            - 0.006758 * math.cos(2 * gamma) + 0.000907 * math.sin(2 * gamma)
            - 0.002697 * math.cos(3 * gamma) + 0.00148 * math.sin(3 * gamma))
    eot = 229.18 * (0.000075 + 0.001868 * math.cos(gamma)
                    - 0.032077 * math.sin(gamma) - 0.014615 * math.cos(2 * gamma)
                    - 0.04089 * math.sin(2 * gamma))
    solar_time = hour_local + eot / 60.0 + (lon - 15.0 * tz) / 15.0
    ha = math.radians((solar_time - 12.0) * 15.0)
    latr = math.radians(lat)
    sin_alt = (math.sin(latr) * math.sin(decl)
               + math.cos(latr) * math.cos(decl) * math.cos(ha))
    return math.asin(max(-1.0, min(1.0, sin_alt)))


def dew_point(t, rh):
    a, b = 17.62, 243.12
    gamma = math.log(max(rh, 1.0) / 100.0) + a * t / (b + t)
    return b * gamma / (a - gamma)


def make_year(label):
    (lat, lon, tz, elev, t_mean, t_season, t_diurnal,
     rh_mean, clearness, wind_mean, wind_dir0, phase) = CLIMATES[label]
    pressure = 101325.0 * (1.0 - 2.25577e-5 * elev) ** 5.2559

    rows = []
    doy = 0
    for month in range(1, 13):
        for day in range(1, DAYS_IN_MONTH[month - 1] + 1):
            doy += 1
            season = math.cos(2.0 * math.pi * (doy - 202) / 365.0)
            # multi-day weather waves, deterministic per climate
            wave = (2.2 * math.sin(2.0 * math.pi * doy / 9.3 + phase)
                    + 1.3 * math.sin(2.0 * math.pi * doy / 4.7 + 2.0 * phase))
            day_clear = clearness * (1.0 - 0.45 * max(0.0, math.sin(
                2.0 * math.pi * doy / 13.7 + 3.0 * phase)) ** 2)
            for hour in range(1, 25):
                h_mid = hour - 0.5
                diurnal = math.cos(2.0 * math.pi * (h_mid - 15.0) / 24.0)
                t = t_mean + t_season * season + t_diurnal * diurnal + wave
                rh = rh_mean - 1.4 * t_diurnal * diurnal - 6.0 * season
                rh = max(12.0, min(100.0, rh))
                dp = min(dew_point(t, rh), t)

                alt = solar_altitude(lat, lon, tz, doy, h_mid)
                sin_alt = math.sin(alt)
                if sin_alt > 0.01:
                    air_mass = 1.0 / max(sin_alt, 0.05)
                    dni = 1100.0 * day_clear * math.exp(-0.13 * air_mass)
                    dhi = (130.0 * (1.0 - day_clear) + 25.0) * sin_alt
                    ghi = dni * sin_alt + dhi
                else:
                    dni = dhi = ghi = 0.0

                wind = max(0.3, wind_mean * (1.0 + 0.35 * diurnal)
                           + 0.8 * math.sin(2.0 * math.pi * doy / 6.1 + phase))
                wdir = (wind_dir0 + 40.0 * math.sin(2.0 * math.pi * doy / 17.3
                                                    + phase) + 8.0 * diurnal) % 360.0

                rows.append((month, day, hour, t, dp, rh, pressure,
                             ghi, dni, dhi, wdir, wind))
    return (lat, lon, tz, elev), rows


def write_epw(path, label, loc, rows):
    lat, lon, tz, elev = loc
    city = label.split("_")[0].replace("-", " ").title()
    with open(path, "w") as f:
        f.write(f"LOCATION,{city},-,USA,Synthetic-TMY,000000,"
                f"{lat:.2f},{lon:.2f},{tz:.1f},{elev:.1f}\n")
        f.write("DESIGN CONDITIONS,0\n")
        f.write("TYPICAL/EXTREME PERIODS,0\n")
        f.write("GROUND TEMPERATURES,0\n")
        f.write("HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0\n")
        f.write(f"COMMENTS 1,synthetic smooth-model weather for {city}; "
                "generated by tools/make_synthetic_epw.py, not measured data\n")
        f.write("COMMENTS 2,\n")
        f.write("DATA PERIODS,1,1,Data,Sunday,1/1,12/31\n")
        for (month, day, hour, t, dp, rh, p, ghi, dni, dhi, wdir, wind) in rows:
            f.write(f"2017,{month},{day},{hour},0,-,"
                    f"{t:.1f},{dp:.1f},{rh:.1f},{p:.0f},0,0,0,"
                    f"{ghi:.1f},{dni:.1f},{dhi:.1f},0,0,0,0,"
                    f"{wdir:.0f},{wind:.1f}\n")


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data/climates"
    os.makedirs(out_dir, exist_ok=True)
    for label in CLIMATES:
        loc, rows = make_year(label)
        assert len(rows) == 8760
        write_epw(os.path.join(out_dir, label + ".epw"), label, loc, rows)
        print(f"wrote {label}.epw")


if __name__ == "__main__":
    main()
