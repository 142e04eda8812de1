namespace fuchs {}
