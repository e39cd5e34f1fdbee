#pragma once

#include "posh/budget.hpp"
#include "posh/completeness.hpp"
#include "posh/error.hpp"
#include "posh/fixtures.hpp"
#include "posh/frame.hpp"
#include "posh/frame_equiv.hpp"
#include "posh/generator.hpp"
#include "posh/io.hpp"
#include "posh/poset.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/report.hpp"
#include "posh/sheaf_locale.hpp"
#include "posh/suite.hpp"
