from . import allocate, bench, schedule, tables, validate

COMMANDS = (allocate, schedule, bench, tables, validate)
