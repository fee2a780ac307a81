# Certificate Protocol Components
