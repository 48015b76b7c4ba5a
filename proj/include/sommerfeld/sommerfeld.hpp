#pragma once

#include "sommerfeld/analytic_integrals.hpp"
#include "sommerfeld/closed_form_spectra.hpp"
#include "sommerfeld/error.hpp"
#include "sommerfeld/fine_structure.hpp"
#include "sommerfeld/numerov_oracle.hpp"
#include "sommerfeld/nu_reducer.hpp"
#include "sommerfeld/phase_integral_engine.hpp"
#include "sommerfeld/potential_catalog.hpp"
#include "sommerfeld/quadrature.hpp"
#include "sommerfeld/report.hpp"
