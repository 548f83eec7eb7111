// Minimal build configuration for the vendored CityHash sources.
#pragma once
