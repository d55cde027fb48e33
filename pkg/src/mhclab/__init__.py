"""mhclab package."""
