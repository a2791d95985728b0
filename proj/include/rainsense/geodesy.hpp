#pragma once

// Geodetic <-> local planar conversion, geostationary look angles and
// slant wet-link geometry.
//
// Local frame: x east, y north, kilometres, origin at the projection origin
// (the north-west vertex of the study area). Earth is a sphere.

namespace rainsense {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

inline constexpr double kMeanEarthRadiusKm = 6371.0;
inline constexpr double kGeoAltitudeKm = 35786.0;

struct GeoPoint {
    double lon_deg = 0.0;  ///< degrees east, [-180, 180]
    double lat_deg = 0.0;  ///< degrees north, (-90, 90)
};

struct LocalPoint {
    double x_km = 0.0;  ///< east of origin
    double y_km = 0.0;  ///< north of origin

    bool operator==(const LocalPoint&) const = default;
};

/// Throws InvalidArgument unless the point is finite and inside the lon/lat ranges.
void validate(const GeoPoint& p);

double distance_km(const LocalPoint& a, const LocalPoint& b);

/// Equirectangular projection about `origin`.
class Projection {
public:
    explicit Projection(GeoPoint origin, double earth_radius_km = kMeanEarthRadiusKm);

    const GeoPoint& origin() const noexcept { return origin_; }
    double earth_radius_km() const noexcept { return earth_radius_km_; }

    LocalPoint to_local(const GeoPoint& p) const;
    GeoPoint from_local(const LocalPoint& p) const;

private:
    GeoPoint origin_;
    double earth_radius_km_;
    double cos_lat0_;
};

struct LookAngles {
    double elevation_deg = 0.0;
    double azimuth_deg = 0.0;  ///< clockwise from true north, [0, 360)
};

/// Look angles from a ground station to a geostationary satellite at `sat_lon_deg`.
/// Throws BelowHorizon when the elevation is <= 0.
LookAngles geo_look_angles(const GeoPoint& station, double sat_lon_deg,
                           double earth_radius_km = kMeanEarthRadiusKm);

struct LinkGeometry {
    double elevation_deg = 0.0;
    double azimuth_deg = 0.0;
    double wet_path_len_km = 0.0;     ///< slant length below the rain height, L
    double ground_proj_len_km = 0.0;  ///< horizontal extent of the wet path
    LocalPoint ground_start;          ///< station position
    LocalPoint ground_end;            ///< virtual gauge position
};

/// Wet-link geometry for known pointing angles. The slant path climbs from
/// `station_alt_km` to `rain_height_km`; its ground projection starts at the
/// station and runs along the azimuth.
LinkGeometry wet_link_geometry(const LocalPoint& station, double station_alt_km,
                               double elevation_deg, double azimuth_deg, double rain_height_km);

/// Full station -> GEO satellite wet-link geometry.
LinkGeometry slant_geometry(const GeoPoint& station, double station_alt_km, double sat_lon_deg,
                            double rain_height_km, const Projection& proj);

}  // namespace rainsense
