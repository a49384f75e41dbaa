#pragma once
#include <array>
#include <optional>
#include <vector>

#include "rfi/charts.hpp"
#include "rfi/cluster.hpp"
#include "rfi/error.hpp"
#include "rfi/upoly.hpp"

namespace rfi {

// a point the computation needs is not defined over K; certificate is the
// polynomial (in t) whose roots are the missing coordinates
class FieldExtensionRequired : public Error {
public:
    FieldExtensionRequired(const std::string& where, std::string certificate)
        : Error("field extension required at " + where + ": " + certificate), certificate(std::move(certificate)) {}
    std::string certificate;
};

// omega = a dx + b dy near the origin
struct LocalFoliation {
    Local a, b;
    bool singular() const;
};

// eliminant factor without roots in K: affine x-coordinates (kind 0),
// y-coordinates over x = x0 (kind 1) or x-coordinates on Z = 0 (kind 2)
struct OpenFactor {
    UPoly f;
    int kind = 0;
    FieldElement x0;
};

struct SingularPoints {
    std::vector<std::array<FieldElement, 3>> points;
    bool complete = true;
    std::vector<OpenFactor> open;
};

// K(theta) for a root theta of an irreducible f over K, with the image of
// the generator of K
struct Extension {
    const NumberField* field = nullptr;
    FieldElement theta;
    FieldElement generator_image;
    FieldElement embed(const FieldElement& x) const;
    Local embed(const Local& f) const;
    Form embed(const Form& f) const;
};

// supported for f of degree 2 or 3 over Q and degree 2 over a quadratic K;
// nullopt otherwise
std::optional<Extension> adjoin_root(const UPoly& f);

SingularPoints singular_points(const OneForm& omega);

// local foliation at a point of P^2 in the chart of root_chart
LocalFoliation localize(const OneForm& omega, const std::array<FieldElement, 3>& p);

struct BlowUp {
    bool dicritical = false;
    // singular points on the exceptional divisor in chart 1, by parameter c,
    // with the transformed foliation centred there
    std::vector<std::pair<FieldElement, LocalFoliation>> chart1;
    LocalFoliation chart2;  // at the origin of chart 2; may be regular
    bool complete = true;
    UPoly cofactor;
};

// transformed foliation in chart 1 (parameter c) or chart 2, with the
// exceptional factor removed
LocalFoliation transform(const LocalFoliation& w, int chart, const FieldElement& c);
BlowUp blow_up_local(const LocalFoliation& w);
bool is_simple(const LocalFoliation& w);

// Every point outside K is either shown simple over a root extension or
// reported through FieldExtensionRequired.
// B_F with its dicritical marks; throws FieldExtensionRequired or
// PreconditionError when the depth cap is exceeded
Configuration build_configuration(const OneForm& omega, int depth_cap = 50);

} // namespace rfi
