"""Physical constants in the package's working units (keV, um)."""

# Electron rest energy, keV.
ELECTRON_REST_KEV = 510.999

# hbar * c in keV * um (0.197327 eV*um).
HBARC_KEV_UM = 0.197327e-3
