FDR_COLUMNS = {
	"Time Delay":"t",
	"Latitude(decimal)":"lat",
	"Longitude(decimal)":"lon",
	"Pressure Altitude(feet)":"pressure_alt",
	"true altitude(feet)":"true_alt",
	"magnetic heading(degrees)":"heading",
	"Airspeed(kts)":"airspeed",
	}

FDR_OPTIONAL_COLUMNS = {
	"Bank angle(degrees)":"bank",
	"Drag configuration":"drag",
	}

# Report column order.
METRIC_ABBREV = {
	"avg_distance":"d",
	"avg_altitude":"z",
	"length":"l",
	"turns":"n",
	"bank_over_height":"theta/h",
	"extended_final":"e",
	}
