"""pisquared command-line application package."""
