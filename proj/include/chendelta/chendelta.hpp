#pragma once

// Umbrella header.

#include "chendelta/audit.hpp"
#include "chendelta/cubic_field.hpp"
#include "chendelta/cubic_form.hpp"
#include "chendelta/delta_opt.hpp"
#include "chendelta/delta_tuple.hpp"
#include "chendelta/equality_structure.hpp"
#include "chendelta/error.hpp"
#include "chendelta/exotic_s3.hpp"
#include "chendelta/frame_core.hpp"
#include "chendelta/hyperplane_families.hpp"
#include "chendelta/immersion.hpp"
#include "chendelta/inequality.hpp"
#include "chendelta/legendrian.hpp"
#include "chendelta/numdiff.hpp"
#include "chendelta/oracles.hpp"
#include "chendelta/random.hpp"
#include "chendelta/report_io.hpp"
#include "chendelta/verify.hpp"
