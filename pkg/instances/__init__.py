"""Random general-position instances and the planes/lines file formats."""
