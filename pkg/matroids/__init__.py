# Matroid Components
