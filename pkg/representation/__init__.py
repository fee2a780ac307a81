# Representation Enumeration Components
