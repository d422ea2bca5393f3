#pragma once

// Convenience umbrella for the whole library.

#include "field.hpp"
#include "poly.hpp"
#include "curve.hpp"
#include "zeta.hpp"
#include "mumford.hpp"
#include "wedge.hpp"
#include "dlocus.hpp"
#include "siksek.hpp"
#include "bounds.hpp"
#include "padic.hpp"
#include "verify.hpp"
#include "report.hpp"
