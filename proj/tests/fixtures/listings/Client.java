package fixtures.client;

import java.util.Objects;

public class Client implements AutoCloseable {
    private final String name;

    public Client(String name) {
        this.name = name;
    }

    public void createProfile() throws ClientException {
        if (name.isEmpty()) {
            throw new ClientException("empty name");
        }
    }

    @Override
    public boolean equals(Object o) {
        return o instanceof Client && Objects.equals(((Client) o).name, name);
    }

    @Override
    public int hashCode() {
        return Objects.hashCode(name);
    }

    @Override
    public void close() {}
}
