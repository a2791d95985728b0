#include "rainsense/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rainsense/errors.hpp"

namespace rainsense {

namespace {

double wrap_lon_deg(double d) {
    d = std::fmod(d + 180.0, 360.0);
    if (d < 0.0) d += 360.0;
    return d - 180.0;
}

}  // namespace

void validate(const GeoPoint& p) {
    if (!std::isfinite(p.lon_deg) || !std::isfinite(p.lat_deg))
        throw InvalidArgument("geodetic coordinates must be finite");
    if (p.lon_deg < -180.0 || p.lon_deg > 180.0)
        throw InvalidArgument("longitude " + std::to_string(p.lon_deg) + " outside [-180, 180]");
    if (p.lat_deg <= -90.0 || p.lat_deg >= 90.0)
        throw InvalidArgument("latitude " + std::to_string(p.lat_deg) + " outside (-90, 90)");
}

double distance_km(const LocalPoint& a, const LocalPoint& b) {
    return std::hypot(b.x_km - a.x_km, b.y_km - a.y_km);
}

Projection::Projection(GeoPoint origin, double earth_radius_km)
    : origin_(origin), earth_radius_km_(earth_radius_km) {
    validate(origin_);
    if (!(earth_radius_km_ > 0.0) || !std::isfinite(earth_radius_km_))
        throw InvalidArgument("earth radius must be positive");
    cos_lat0_ = std::cos(origin_.lat_deg * kDegToRad);
}

LocalPoint Projection::to_local(const GeoPoint& p) const {
    return {earth_radius_km_ * cos_lat0_ * (p.lon_deg - origin_.lon_deg) * kDegToRad,
            earth_radius_km_ * (p.lat_deg - origin_.lat_deg) * kDegToRad};
}

GeoPoint Projection::from_local(const LocalPoint& p) const {
    return {origin_.lon_deg + p.x_km / (earth_radius_km_ * cos_lat0_) * kRadToDeg,
            origin_.lat_deg + p.y_km / earth_radius_km_ * kRadToDeg};
}

LookAngles geo_look_angles(const GeoPoint& station, double sat_lon_deg, double earth_radius_km) {
    validate(station);
    if (!std::isfinite(sat_lon_deg)) throw InvalidArgument("satellite longitude must be finite");

    const double k = earth_radius_km / (earth_radius_km + kGeoAltitudeKm);
    const double lat = station.lat_deg * kDegToRad;
    const double dlon = wrap_lon_deg(sat_lon_deg - station.lon_deg) * kDegToRad;

    // psi: central angle between the station and the sub-satellite point.
    const double cos_psi = std::cos(lat) * std::cos(dlon);
    const double sin_psi = std::sqrt(std::max(0.0, 1.0 - cos_psi * cos_psi));

    LookAngles out;
    out.elevation_deg = std::atan2(cos_psi - k, sin_psi) * kRadToDeg;
    if (!(out.elevation_deg > 0.0))
        throw BelowHorizon("satellite at " + std::to_string(sat_lon_deg) +
                           " deg E is below the horizon (elevation " +
                           std::to_string(out.elevation_deg) + " deg)");

    // Initial great-circle bearing towards the sub-satellite point.
    double az = std::atan2(std::sin(dlon), -std::sin(lat) * std::cos(dlon)) * kRadToDeg;
    if (az < 0.0) az += 360.0;
    if (az >= 360.0) az -= 360.0;
    out.azimuth_deg = az;
    return out;
}

LinkGeometry wet_link_geometry(const LocalPoint& station, double station_alt_km,
                               double elevation_deg, double azimuth_deg, double rain_height_km) {
    if (!std::isfinite(elevation_deg) || !std::isfinite(azimuth_deg) ||
        !std::isfinite(station_alt_km) || !std::isfinite(rain_height_km))
        throw InvalidArgument("link geometry inputs must be finite");
    if (!(elevation_deg > 0.0))
        throw BelowHorizon("elevation " + std::to_string(elevation_deg) + " deg is not above the horizon");
    if (elevation_deg > 90.0) throw InvalidArgument("elevation above 90 deg");
    const double dh = rain_height_km - station_alt_km;
    if (!(dh > 0.0))
        throw DegenerateGeometry("rain height " + std::to_string(rain_height_km) +
                                 " km is not above the station altitude " +
                                 std::to_string(station_alt_km) + " km");

    const double el = elevation_deg * kDegToRad;
    const double sin_el = std::sin(el);
    // cos(pi/2) is ~6e-17 in floating point; the zenith link has no ground extent.
    const double cos_el = elevation_deg == 90.0 ? 0.0 : std::cos(el);
    const double az = azimuth_deg * kDegToRad;

    LinkGeometry g;
    g.elevation_deg = elevation_deg;
    g.azimuth_deg = azimuth_deg;
    g.wet_path_len_km = dh / sin_el;
    g.ground_proj_len_km = dh * cos_el / sin_el;
    g.ground_start = station;
    g.ground_end = {station.x_km + g.ground_proj_len_km * std::sin(az),
                    station.y_km + g.ground_proj_len_km * std::cos(az)};
    return g;
}

LinkGeometry slant_geometry(const GeoPoint& station, double station_alt_km, double sat_lon_deg,
                            double rain_height_km, const Projection& proj) {
    const LookAngles look = geo_look_angles(station, sat_lon_deg, proj.earth_radius_km());
    return wet_link_geometry(proj.to_local(station), station_alt_km, look.elevation_deg,
                             look.azimuth_deg, rain_height_km);
}

}  // namespace rainsense
